#pragma once

#include <fraclab/specialfn.hpp>

#include <functional>
#include <vector>

namespace fraclab {

// One Dirichlet eigenmode of -d^2/dx^2 on (0, pi): sin(kx), eigenvalue k^2.
struct EigenMode {
    int k;
    double coefficient;
};

// Separable solution of D_t^delta v - v_xx = 0 on (0,pi) with zero boundary
// values:  v(x,t) = sum_k c_k E_delta(-k^2 t^delta) sin(kx).
struct ExactProblem {
    FractionalOrder delta;
    std::vector<EigenMode> modes;
    double T;

    ExactProblem(FractionalOrder d, std::vector<EigenMode> m, double horizon);
};

double exact_value(const ExactProblem& p, double x, double t,
                   const SeriesEvalConfig& cfg = {});

// Temporal derivatives; both blow up as t -> 0+ (like t^{delta-1} and
// t^{delta-2}) whenever the mode sum is nonzero at x, hence t = 0 is rejected.
double exact_dt(const ExactProblem& p, double x, double t,
                const SeriesEvalConfig& cfg = {});
double exact_dtt(const ExactProblem& p, double x, double t,
                 const SeriesEvalConfig& cfg = {});

enum class DerivativeOrder { first, second };

// Reference exponent of the initial layer: delta - 1 for v_t, delta - 2 for v_tt.
double singular_exponent_reference(const FractionalOrder& delta, DerivativeOrder which);

// (x,t) closure over exact_value that caches the mode factors of the most
// recently seen t, so row-wise tabulation costs one series evaluation per
// time level. The cache is unsynchronized; do not share across threads.
std::function<double(double, double)> exact_solution_fn(const ExactProblem& p,
                                                        const SeriesEvalConfig& cfg = {});

} // namespace fraclab
