#include <fraclab/expr.hpp>

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fraclab {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr parse() {
        Expr e = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "expression '" << s_ << "': " << what << " at position " << pos_;
        throw config_error(os.str());
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Expr sum() {
        Expr acc = product();
        for (;;) {
            if (eat('+')) {
                Expr rhs = product();
                acc = [acc, rhs](double x, double t) { return acc(x, t) + rhs(x, t); };
            } else if (eat('-')) {
                Expr rhs = product();
                acc = [acc, rhs](double x, double t) { return acc(x, t) - rhs(x, t); };
            } else {
                return acc;
            }
        }
    }

    Expr product() {
        Expr acc = unary();
        for (;;) {
            if (eat('*')) {
                Expr rhs = unary();
                acc = [acc, rhs](double x, double t) { return acc(x, t) * rhs(x, t); };
            } else if (eat('/')) {
                Expr rhs = unary();
                acc = [acc, rhs](double x, double t) { return acc(x, t) / rhs(x, t); };
            } else {
                return acc;
            }
        }
    }

    Expr unary() {
        if (eat('-')) {
            Expr e = unary();
            return [e](double x, double t) { return -e(x, t); };
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (eat('^')) {
            Expr e = unary();  // right associative, binds unary minus in exponent
            return [base, e](double x, double t) { return std::pow(base(x, t), e(x, t)); };
        }
        return base;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected character");
    }

    Expr number() {
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        };
        digits();
        if (end < s_.size() && s_[end] == '.') {
            ++end;
            digits();
        }
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            ++end;
            if (end < s_.size() && (s_[end] == '+' || s_[end] == '-')) ++end;
            digits();
        }
        double v;
        try {
            v = std::stod(s_.substr(pos_, end - pos_));
        } catch (const std::exception&) {
            fail("bad numeric literal");
        }
        pos_ = end;
        return [v](double, double) { return v; };
    }

    Expr identifier() {
        std::size_t end = pos_;
        while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
        std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "x") return [](double x, double) { return x; };
        if (name == "t") return [](double, double t) { return t; };
        if (name == "pi") return [](double, double) { return std::numbers::pi; };
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!eat('(')) fail("expected '(' after function name");
            Expr arg = sum();
            if (!eat(')')) fail("missing ')'");
            if (name == "sin")
                return [arg](double x, double t) { return std::sin(arg(x, t)); };
            if (name == "cos")
                return [arg](double x, double t) { return std::cos(arg(x, t)); };
            return [arg](double x, double t) { return std::exp(arg(x, t)); };
        }
        fail("unknown identifier '" + name + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

} // namespace fraclab
