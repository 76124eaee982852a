#pragma once

#include <fraclab/errors.hpp>
#include <fraclab/kernels.hpp>
#include <fraclab/specialfn.hpp>

#include <functional>
#include <string>
#include <vector>

namespace fraclab {

// Temporal mesh t_j = T (j/M)^r on [0, T]. r = 1 is uniform; r > 1 grades the
// nodes toward t = 0. Endpoints are exact by construction.
class TimeGrid {
public:
    TimeGrid(double T, int M, double grading = 1.0);

    double horizon() const { return T_; }
    int intervals() const { return M_; }
    double grading() const { return r_; }
    bool uniform() const { return r_ == 1.0; }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }
    double step(int j) const { return nodes_[static_cast<std::size_t>(j)] -
                                      nodes_[static_cast<std::size_t>(j) - 1]; }

private:
    double T_;
    int M_;
    double r_;
    std::vector<double> nodes_;
};

// Function values on a TimeGrid.
struct SampledFunction {
    TimeGrid grid;
    std::vector<double> values;

    SampledFunction(TimeGrid g, std::vector<double> v);
    static SampledFunction sample(const TimeGrid& g,
                                  const std::function<double(double)>& fn);
};

// Caputo derivative of order delta at time t from the defining integral
//   (1/Gamma(ceil-delta)) * int_0^t (t-s)^{ceil-delta-1} g^{(ceil)}(s) ds,
// where upper_deriv is the ceil-th classical derivative of g. Evaluated by
// tanh-sinh quadrature, which tolerates algebraic endpoint singularities of
// the integrand at both s = 0 and s = t without ever sampling the endpoints.
// Absolute accuracy target tol; throws quadrature_error if the level-to-level
// estimate fails to reach it.
double caputo_quadrature(const std::function<double(double)>& upper_deriv,
                         const FractionalOrder& delta, double t, double tol);

// Discrete Caputo operator for delta in (0,1) built on the piecewise-linear
// interpolant: at each node t_n,
//   sum_{j=1}^{n} w_{n,j} (f_j - f_{j-1}),
//   w_{n,j} = [(t_n-t_{j-1})^{1-delta} - (t_n-t_j)^{1-delta}] / (Gamma(2-delta) tau_j).
// Node 0 of the output is 0 by convention.
SampledFunction l1_operator(const SampledFunction& f, const FractionalOrder& delta,
                            kernels::Exec exec = kernels::Exec::openmp);

// Counterpart for delta in (1,2) on uniform grids: piecewise-constant second
// differences against the kernel, with the initial slope phi1 entering the
// first interval through a symmetric ghost value.
SampledFunction l2_operator(const SampledFunction& f, const FractionalOrder& delta,
                            double phi1, kernels::Exec exec = kernels::Exec::openmp);

// Closed catalog of test functions with known ceil-th derivatives and bounds,
// used by the decay-bound check and the CLI. "tpow" is t^delta, the classical
// counterexample that is not in C^ceil[0,T].
struct CatalogFunction {
    std::string id;
    std::function<double(double)> g;
    std::function<double(double)> d1;
    std::function<double(double)> d2;             // null when unused
    std::function<double(double)> caputo_exact;   // analytic D^delta when known, else null
    double deriv_bound;                           // sup |g^{(ceil)}| on [0,T]; NaN if unbounded
    bool smooth_on_closed;                        // g in C^ceil[0,T]
};

CatalogFunction catalog_lookup(const std::string& id, const FractionalOrder& delta,
                               double T);
std::vector<std::string> catalog_ids();

struct DecaySample {
    double t;
    double value;   // |D^delta g(t)|
    double bound;   // C t^{ceil-delta} / Gamma(ceil-delta+1); NaN when C unknown
};

struct DecayBoundReport {
    std::string id;
    double delta;
    std::vector<DecaySample> samples;
    double max_excess;        // max(|value| - bound); -inf if bound not applicable
    double fitted_exponent;   // log-log slope of |value| against t
    bool bound_applicable;    // catalog function lies in C^ceil[0,T]
};

// Evaluates |D^delta g| by quadrature at each sample, compares against the
// decay bound C t^{ceil-delta}/Gamma(ceil-delta+1), and fits the observed
// decay exponent. For smooth catalog entries with nonvanishing ceil-th
// derivative at 0 the exponent approaches ceil - delta; t^delta stays flat.
DecayBoundReport lemma1_bound_check(const std::string& g_id,
                                    const FractionalOrder& delta,
                                    const std::vector<double>& t_samples,
                                    double T, double quad_tol = 1e-9);

} // namespace fraclab
