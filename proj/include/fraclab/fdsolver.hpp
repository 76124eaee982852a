#pragma once

#include <fraclab/caputo.hpp>
#include <fraclab/errors.hpp>
#include <fraclab/exactsol.hpp>
#include <fraclab/kernels.hpp>
#include <fraclab/specialfn.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fraclab {

enum class Boundary { left, right };

using SpaceTimeFn = std::function<double(double, double)>;
using SpaceFn = std::function<double(double)>;
using TimeFn = std::function<double(double)>;

// Raw data of the 1D initial-boundary value problem
//   D_t^delta u - p u_xx + q u_x + r u = f   on (a,b) x (0,T],
//   u = psi on the boundary, u(.,0) = phi0, and u_t(.,0) = phi1 when
//   delta lies in (1,2).
struct ProblemData {
    double a = 0.0;
    double b = 1.0;
    double T = 1.0;
    FractionalOrder delta{0.5};
    SpaceTimeFn p;
    SpaceTimeFn q;
    SpaceTimeFn r;
    SpaceTimeFn f;
    TimeFn psi_a;
    TimeFn psi_b;
    SpaceFn phi0;
    SpaceFn phi1;       // required iff delta in (1,2)
    SpaceFn phi0_dx;    // optional analytic derivatives of phi0
    SpaceFn phi0_dxx;
    SpaceFn q_dx;       // optional d/dx of q(.,0)
};

// Validated problem. Construction checks uniform ellipticity by sampling p
// over the closed rectangle (minimum recorded), the corner compatibility
// phi0 = psi(.,0) to 1e-12, and that phi1 is supplied exactly when the
// order calls for it.
class ProblemSpec {
public:
    explicit ProblemSpec(ProblemData d);

    const ProblemData& data() const { return d_; }
    double a() const { return d_.a; }
    double b() const { return d_.b; }
    double T() const { return d_.T; }
    const FractionalOrder& delta() const { return d_.delta; }
    double psi(Boundary side, double t) const {
        return side == Boundary::left ? d_.psi_a(t) : d_.psi_b(t);
    }
    double p_min() const { return p_min_; }
    int ellipticity_samples() const { return ellipticity_samples_; }

private:
    ProblemData d_;
    double p_min_ = 0.0;
    int ellipticity_samples_ = 0;
};

// Uniform partition of [a,b] into N cells.
class SpaceGrid {
public:
    SpaceGrid(double a, double b, int N);
    int cells() const { return N_; }
    double spacing() const { return h_; }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

private:
    int N_;
    double h_;
    std::vector<double> nodes_;
};

// Solution values on the tensor grid, row n = time level t_n.
class SolutionField {
public:
    SolutionField(SpaceGrid s, TimeGrid t);

    const SpaceGrid& space() const { return space_; }
    const TimeGrid& time() const { return time_; }
    double at(int n, int i) const { return v_[idx(n, i)]; }
    double& at(int n, int i) { return v_[idx(n, i)]; }
    const double* row(int n) const { return v_.data() + idx(n, 0); }
    double* row(int n) { return v_.data() + idx(n, 0); }
    const std::vector<double>& values() const { return v_; }

    // Backward difference quotient (u(t_n) - u(t_{n-1})) / tau_n at node i.
    double backward_dt(int n, int i) const;

    std::vector<std::string> warnings;

private:
    std::size_t idx(int n, int i) const {
        return static_cast<std::size_t>(n) * (space_.cells() + 1) +
               static_cast<std::size_t>(i);
    }
    SpaceGrid space_;
    TimeGrid time_;
    std::vector<double> v_;
};

// Fully implicit solve: discrete Caputo operator in time (L1 weights for
// delta in (0,1), second-difference weights on uniform grids for (1,2))
// coupled with central second-order differences in space; Dirichlet rows are
// pinned to psi. A mesh-Peclet violation h max|q| / (2 p_min) >= 1 is
// recorded as a warning on the returned field.
SolutionField solve(const ProblemSpec& spec, const SpaceGrid& space,
                    const TimeGrid& time, kernels::Exec exec = kernels::Exec::openmp);

struct ConvergenceEntry {
    int M;
    double dt;          // T / M
    double err_at_T;    // max-norm error on the final level
    double err_global;  // max-norm error over all levels (NaN without a usable reference)
};

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
    double order_at_T = 0.0;
    double order_global = 0.0;  // NaN when err_global unavailable
    std::string reference;      // description of the error reference used
    std::string to_table() const;
};

// Temporal convergence sweep at fixed spatial resolution. With an exact
// solution the error is measured against it on every level (the global
// max-norm error is what exhibits the layer-driven order reduction; the
// final-level error converges faster). Without one, a fine-mesh reference
// (4x the largest M, 2x N) supplies the final-level error only.
ConvergenceReport convergence_study(const ProblemSpec& spec, const SpaceGrid& space,
                                    const std::vector<int>& M_list, double grading,
                                    const SpaceTimeFn& exact = nullptr,
                                    kernels::Exec exec = kernels::Exec::openmp);

// Built-in problems used by tests, the CLI and the scripted scenarios.

// Heat/wave problem on (0,pi) with zero data except phi0 = sum c_k sin(kx);
// its solution is the eigenmode ExactProblem with the same modes.
ProblemSpec eigenmode_problem(const FractionalOrder& delta,
                              const std::vector<EigenMode>& modes, double T);

// Compatible smooth problem manufactured from u = (1 + t^2) sin x, with
// f = D_t^delta(1 + t^2) sin x + (1 + t^2) sin x; valid for delta in (0,1).
ProblemSpec smooth_manufactured_problem(const FractionalOrder& delta, double T);
SpaceTimeFn smooth_manufactured_solution();

} // namespace fraclab
