#pragma once

// Independent reference computations for the test suite. Everything here
// deliberately avoids the library's own evaluation paths: gamma factors come
// from std::tgamma, derivatives from difference quotients, integrals from a
// midpoint rule in the substituted variable.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// Reference constants (25+ digit values, rounded to double).
inline constexpr double kSqrtPi = 1.7724538509055160272981674833411452;
inline constexpr double kE = 2.7182818284590452353602874713526625;
inline constexpr double kCosh1 = 1.5430806348152437784779056207570617;
// E_{1/2}(-1) = e * erfc(1)
inline constexpr double kMl_half_m1 = 0.4275835761558070044107503;
inline constexpr double kGamma15 = 0.8862269254527580136490837;
inline constexpr double kGamma25 = 1.329340388179137020473626;

// D^delta t^beta = Gamma(beta+1)/Gamma(beta+1-delta) t^{beta-delta},
// valid for beta > ceil(delta) - 1.
inline double power_rule(double delta, double beta, double t) {
    return std::tgamma(beta + 1.0) / std::tgamma(beta + 1.0 - delta) *
           std::pow(t, beta - delta);
}

inline double central_diff(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline double second_central_diff(const std::function<double(double)>& f, double t,
                                  double h) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

// Caputo integral by midpoint refinement in the substituted variable
// u = (t-s)^mu, which removes the kernel singularity:
//   (1/Gamma(mu)) int_0^t (t-s)^{mu-1} g(s) ds
//     = (1/(mu Gamma(mu))) int_0^{t^mu} g(t - u^{1/mu}) du.
// Doubles the panel count until two refinements agree within tol.
inline double caputo_midpoint(const std::function<double(double)>& upper_deriv,
                              double delta, int ceil, double t, double tol) {
    double mu = ceil - delta;
    double top = std::pow(t, mu);
    auto integrand = [&](double u) { return upper_deriv(t - std::pow(u, 1.0 / mu)); };
    double prev = 0.0;
    for (int n = 64; n <= (1 << 22); n *= 2) {
        double acc = 0.0;
        double w = top / n;
        for (int i = 0; i < n; ++i) acc += integrand((i + 0.5) * w);
        acc *= w / (mu * std::tgamma(mu));
        if (n > 64 && std::abs(acc - prev) <= tol) return acc;
        prev = acc;
    }
    throw std::runtime_error("caputo_midpoint: no convergence");
}

} // namespace oracle
