#pragma once

#include <fraclab/errors.hpp>

namespace fraclab {

// Fractional differentiation order delta in (0,1) or (1,2).
// ceiling() is the integer order of the classical derivative inside the
// Caputo integral: 1 on (0,1), 2 on (1,2). Integer orders are rejected.
class FractionalOrder {
public:
    explicit FractionalOrder(double delta);
    double value() const { return delta_; }
    int ceiling() const { return ceiling_; }

private:
    double delta_;
    int ceiling_;
};

// Truncation policy for the power series evaluated in this module.
struct SeriesEvalConfig {
    double abs_tol = 1e-12;  // bound on the neglected tail
    int max_terms = 2000;
    double arg_bound = 50.0; // largest |z| accepted before cancellation ruins the plain series
};

// Gamma(x) for x > 0 via the 13-term Lanczos rational approximation
// (g = 6.024680040776729583740234375). Relative error is a few ulp on (0, 50].
// Throws std::domain_error for x <= 0, std::overflow_error past x ~ 171.6.
double gamma(double x);

// E_alpha(z) = sum_{k>=0} z^k / Gamma(alpha k + 1), alpha > 0.
// Terms are built by a Gamma-ratio recurrence and summed compensated; the
// series stops once the geometric tail bound drops below cfg.abs_tol.
// Throws series_error if that never happens within cfg.max_terms.
double mittag_leffler(double alpha, double z, const SeriesEvalConfig& cfg = {});

// (d/dt) E_delta(-t^delta) = sum_{k>=1} (-1)^k t^{k delta - 1} / Gamma(delta k), t > 0.
double ml_time_derivative(const FractionalOrder& delta, double t,
                          const SeriesEvalConfig& cfg = {});

// (d/dt) E_delta(-lambda t^delta): same series with (-lambda)^k coefficients.
double ml_time_derivative_scaled(const FractionalOrder& delta, double lambda, double t,
                                 const SeriesEvalConfig& cfg = {});

// (d^2/dt^2) E_delta(-t^delta) = sum_{k>=1} (-1)^k t^{delta k - 2} / Gamma(delta k - 1).
// Only defined for delta in (1,2); the k=1 term needs Gamma(delta - 1) > 0.
double ml_second_time_derivative(const FractionalOrder& delta, double t,
                                 const SeriesEvalConfig& cfg = {});

double ml_second_time_derivative_scaled(const FractionalOrder& delta, double lambda,
                                        double t, const SeriesEvalConfig& cfg = {});

} // namespace fraclab
