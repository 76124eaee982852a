#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace fraclab {

// Least-squares slope of log|v| against log t. No input policing beyond
// positivity; callers that expose this as a contract add their own checks.
inline double loglog_slope(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("loglog_slope: need matching samples, >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(std::abs(v[i]) > 0.0))
            throw std::invalid_argument("loglog_slope: samples must be nonzero with t > 0");
        double x = std::log(t[i]);
        double y = std::log(std::abs(v[i]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double den = sxx - sx * sx / n;
    if (!(den > 0.0))
        throw std::invalid_argument("loglog_slope: degenerate abscissae");
    return (sxy - sx * sy / n) / den;
}

// Empirical order from mesh sizes and errors: slope of log(err) vs log(1/M).
inline double fit_order(std::span<const double> M, std::span<const double> err) {
    if (M.size() != err.size() || M.size() < 2)
        throw std::invalid_argument("fit_order: need matching samples, >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) {
        if (!(M[i] > 0.0) || !(err[i] > 0.0))
            throw std::invalid_argument("fit_order: sizes and errors must be positive");
        double x = -std::log(M[i]);
        double y = std::log(err[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double den = sxx - sx * sx / n;
    if (!(den > 0.0))
        throw std::invalid_argument("fit_order: degenerate abscissae");
    return (sxy - sx * sy / n) / den;
}

} // namespace fraclab
