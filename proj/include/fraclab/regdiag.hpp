#pragma once

#include <fraclab/exactsol.hpp>
#include <fraclab/fdsolver.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fraclab {

// Elliptic part of the problem with coefficients frozen at t = 0:
//   L0 w = -p0 w'' + q0 w' + r0 w  on (a,b).
struct SteadyOperator {
    double a;
    double b;
    SpaceFn p0;
    SpaceFn q0;
    SpaceFn r0;
    SpaceFn q0_dx;  // optional; central differences otherwise

    static SteadyOperator from_problem(const ProblemSpec& spec);
};

// Outcome of checking the sufficient uniqueness conditions for the frozen
// boundary value problem L0 w = f(.,0), w = psi(.,0) on the boundary:
// r0 >= 0 gives a maximum principle; p0 == 1 with r0 - q0'/2 > 0 gives the
// energy argument. Undetermined means neither held (uniqueness may still hold).
enum class Assumption1 { MaxPrinciple, EnergyCondition, Undetermined };

// Sampling resolution used by assumption1_check and the data-vanishing scans.
inline constexpr int kConditionSamples = 10000;

Assumption1 assumption1_check(const SteadyOperator& op);

// Residual of the forced initial-value equation: max over interior nodes of
// |L0 phi0 - f(.,0)|. Zero (up to discretization) is necessary for a solution
// with ceil-th time derivative continuous up to t = 0; a positive residual
// certifies the initial layer. Uses analytic phi0 derivatives when the
// problem carries them, second differences otherwise.
double theorem_residual(const ProblemSpec& spec, const SpaceGrid& space);

// The unique initial value any globally regular solution must carry: solves
// the two-point problem L0 w = f0, w(a) = psi0.first, w(b) = psi0.second by
// central differences and tridiagonal elimination. A singular system is
// reported via singular_system_error (uniqueness evidence fails).
std::vector<double> forced_initial_condition(const SteadyOperator& op,
                                             const SpaceFn& f0,
                                             std::pair<double, double> psi0,
                                             const SpaceGrid& space);

// max |L0 w - f0| over interior nodes for a grid function w (second differences).
double steady_residual_on_grid(const SteadyOperator& op, const SpaceFn& f0,
                               const std::vector<double>& w, const SpaceGrid& space);

struct LimitSample {
    double t;
    double value;  // D_t^delta u(x, t)
};

struct LimitCheckReport {
    std::vector<LimitSample> samples;
    double limit_estimate;  // value at the smallest t
    bool vanishes;          // |limit_estimate| <= tol
    double tol;
};

// Trend of D_t^delta u(x,.) as t -> 0+, evaluated by quadrature on the exact
// solution. A nonzero limit certifies that the ceil-th time derivative cannot
// be continuous up to t = 0. The second overload takes the ceil-th time
// derivative of an arbitrary u(x,.) directly.
LimitCheckReport corollary1_limit_check(const ExactProblem& p, double x,
                                        std::vector<double> t_samples,
                                        double quad_tol = 1e-8, double zero_tol = 1e-3);
LimitCheckReport corollary1_limit_check(const std::function<double(double)>& upper_deriv,
                                        const FractionalOrder& delta,
                                        std::vector<double> t_samples,
                                        double quad_tol = 1e-8, double zero_tol = 1e-3);

// Least-squares slope of log|value| against log t. Requires >= 4 samples with
// positive values; throws std::invalid_argument if the times span less than
// one decade (two or more recommended).
double estimate_singularity_exponent(const std::vector<double>& t,
                                     const std::vector<double>& value);

struct DiagnosticsReport {
    double incompat_residual;        // inf-norm of L0 phi0 - f(.,0) on interior nodes
    double residual_floor;           // 10 h^2 discretization floor when differenced
    Assumption1 assumption1;
    std::optional<std::vector<double>> forced_phi0;  // present unless Undetermined
    bool collapse;                   // all data vanish after forcing
    std::optional<double> fitted_exponent;  // layer exponent from a solve, if requested
    std::vector<double> layer_t;            // samples behind fitted_exponent
    std::vector<double> layer_value;
    int condition_samples;

    std::string to_text(const SpaceGrid& space) const;
};

struct DiagnoseOptions {
    bool estimate_layer = false;  // solve on a graded mesh and fit |u_t| near t = 0
    int layer_M = 512;
    double layer_grading = 3.0;
    kernels::Exec exec = kernels::Exec::openmp;
};

DiagnosticsReport diagnose(const ProblemSpec& spec, const SpaceGrid& space,
                           const DiagnoseOptions& opts = {});

} // namespace fraclab
