#pragma once

#include <fraclab/errors.hpp>

#include <functional>
#include <string>

namespace fraclab {

// Closed coefficient grammar for config files: numeric literals, the
// variables x and t, pi, the functions sin/cos/exp, and + - * / ^ with the
// usual precedence. Parsing yields a plain evaluable closure.
using Expr = std::function<double(double, double)>;

// Throws config_error with a character position on malformed input.
Expr parse_expr(const std::string& text);

} // namespace fraclab
