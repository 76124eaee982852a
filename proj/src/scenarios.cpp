#include <fraclab/scenarios.hpp>

#include <fraclab/exactsol.hpp>
#include <fraclab/fdsolver.hpp>
#include <fraclab/regdiag.hpp>

#include <cmath>
#include <numbers>

namespace fraclab {

bool CheckList::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void CheckList::append(CheckList other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
}

Check make_check(std::string anchor, std::string name, double measured, double lo,
                 double hi) {
    bool pass = measured >= lo && measured <= hi;
    return Check{std::move(anchor), std::move(name), measured, lo, hi, pass};
}

void print_checks(std::ostream& os, const CheckList& list) {
    for (const auto& c : list.checks) {
        os << (c.pass ? "PASS" : "FAIL") << ' ' << c.anchor << ' ' << c.name
           << "  measured=" << c.measured << "  expected in [" << c.lo << ", "
           << c.hi << "]\n";
    }
}

namespace {

// Sample window for the layer fits: the lowest two decades of [1e-6, 1e-3].
// Nearer t = 0 the subleading series terms perturb the fitted slope least;
// over the full three decades the k = 2 term biases the delta = 0.3 fit by
// about 0.03, outside the 0.02 band.
std::vector<double> layer_window() {
    std::vector<double> ts;
    const int n = 16;
    for (int i = 0; i < n; ++i)
        ts.push_back(1e-6 * std::pow(100.0, static_cast<double>(i) / (n - 1)));
    return ts;
}

} // namespace

CheckList layer_exponent_checks() {
    CheckList out;
    const double x = std::numbers::pi / 2.0;
    const std::vector<double> ts = layer_window();

    for (double dv : {0.3, 0.5, 0.7}) {
        FractionalOrder delta(dv);
        ExactProblem p(delta, {{1, 1.0}}, 1.0);
        std::vector<double> vs;
        for (double t : ts) vs.push_back(exact_dt(p, x, t));
        double slope = estimate_singularity_exponent(ts, vs);
        double target = singular_exponent_reference(delta, DerivativeOrder::first);
        out.checks.push_back(make_check(
            "example1", "v_t-layer-exponent delta=" + std::to_string(dv).substr(0, 3),
            slope, target - 0.02, target + 0.02));
    }
    for (double dv : {1.2, 1.5, 1.8}) {
        FractionalOrder delta(dv);
        ExactProblem p(delta, {{1, 1.0}}, 1.0);
        std::vector<double> vs;
        for (double t : ts) vs.push_back(exact_dtt(p, x, t));
        double slope = estimate_singularity_exponent(ts, vs);
        double target = singular_exponent_reference(delta, DerivativeOrder::second);
        out.checks.push_back(make_check(
            "example1", "v_tt-layer-exponent delta=" + std::to_string(dv).substr(0, 3),
            slope, target - 0.02, target + 0.02));
    }
    return out;
}

CheckList limit_nonzero_check() {
    CheckList out;
    const double x = std::numbers::pi / 2.0;
    FractionalOrder delta(0.5);
    ExactProblem p(delta, {{1, 1.0}}, 1.0);
    std::vector<double> ts = {0.1, 0.03, 0.01, 0.003, 0.001};
    LimitCheckReport rep = corollary1_limit_check(p, x, ts);
    // D_t^delta v = v_xx -> -sin(x) = -1 at x = pi/2: decisively nonzero.
    out.checks.push_back(
        make_check("example1", "caputo-limit-at-0 (nonzero)", rep.limit_estimate,
                   -1.0 - 0.05, -1.0 + 0.05));
    return out;
}

CheckList collapse_checks(kernels::Exec exec) {
    CheckList out;
    const double pi = std::numbers::pi;
    FractionalOrder delta(0.5);
    SpaceGrid space(0.0, pi, 64);

    SteadyOperator op{0.0, pi, [](double) { return 1.0; }, [](double) { return 0.0; },
                      [](double) { return 0.0; }, nullptr};
    std::vector<double> forced =
        forced_initial_condition(op, [](double) { return 0.0; }, {0.0, 0.0}, space);
    double forced_max = 0.0;
    for (double v : forced) forced_max = std::max(forced_max, std::abs(v));
    out.checks.push_back(
        make_check("example2", "forced-phi0-max-norm", forced_max, 0.0, 1e-12));

    // Solve with the forced initial condition and otherwise zero data.
    ProblemData d;
    d.a = 0.0;
    d.b = pi;
    d.T = 1.0;
    d.delta = delta;
    d.p = [](double, double) { return 1.0; };
    d.q = [](double, double) { return 0.0; };
    d.r = [](double, double) { return 0.0; };
    d.f = [](double, double) { return 0.0; };
    d.psi_a = [](double) { return 0.0; };
    d.psi_b = [](double) { return 0.0; };
    double h = space.spacing();
    d.phi0 = [forced, h](double x) {
        // Linear interpolation of the forced grid function (identically zero here).
        double s = x / h;
        int i = std::min(static_cast<int>(s), static_cast<int>(forced.size()) - 2);
        double frac = s - i;
        return forced[static_cast<std::size_t>(i)] * (1.0 - frac) +
               forced[static_cast<std::size_t>(i) + 1] * frac;
    };
    ProblemSpec spec(std::move(d));
    TimeGrid time(1.0, 256, 1.0);
    SolutionField u = solve(spec, space, time, exec);
    double umax = 0.0;
    for (double v : u.values()) umax = std::max(umax, std::abs(v));
    out.checks.push_back(
        make_check("example2", "solution-max-norm-after-forcing", umax, 0.0, 1e-10));
    return out;
}

CheckList residual_gate_checks() {
    CheckList out;
    const double pi = std::numbers::pi;
    SpaceGrid space(0.0, pi, 256);
    const double h2 = space.spacing() * space.spacing();

    ProblemSpec incompatible = eigenmode_problem(FractionalOrder(0.5), {{1, 1.0}}, 1.0);
    double res = theorem_residual(incompatible, space);
    out.checks.push_back(make_check("theorem23", "residual-incompatible-data", res,
                                    1.0 - h2, 1.0 + h2));

    ProblemSpec compatible = smooth_manufactured_problem(FractionalOrder(0.5), 1.0);
    double res2 = theorem_residual(compatible, space);
    out.checks.push_back(
        make_check("theorem23", "residual-compatible-data", res2, 0.0, 10.0 * h2));
    return out;
}

CheckList order_reduction_checks(kernels::Exec exec) {
    CheckList out;
    FractionalOrder delta(0.5);
    SpaceGrid space(0.0, std::numbers::pi, 1024);
    const std::vector<int> Ms = {64, 128, 256, 512, 1024};

    ExactProblem exact(delta, {{1, 1.0}}, 1.0);
    ProblemSpec layer_spec = eigenmode_problem(delta, {{1, 1.0}}, 1.0);

    ConvergenceReport uniform =
        convergence_study(layer_spec, space, Ms, 1.0, exact_solution_fn(exact), exec);
    out.checks.push_back(make_check("remark24", "uniform-mesh-order(global)",
                                    uniform.order_global, 0.40, 0.60));

    ProblemSpec smooth_spec = smooth_manufactured_problem(delta, 1.0);
    ConvergenceReport smooth = convergence_study(smooth_spec, space, Ms, 1.0,
                                                 smooth_manufactured_solution(), exec);
    out.checks.push_back(make_check("remark24", "smooth-problem-order(global)",
                                    smooth.order_global, 1.35, 1.60));

    ConvergenceReport graded =
        convergence_study(layer_spec, space, Ms, 3.0, exact_solution_fn(exact), exec);
    out.checks.push_back(make_check("remark24", "graded-mesh-order(global)",
                                    graded.order_global, 1.2,
                                    std::numeric_limits<double>::infinity()));
    return out;
}

CheckList solver_oracle_checks(kernels::Exec exec) {
    CheckList out;
    FractionalOrder delta(0.5);
    SpaceGrid space(0.0, std::numbers::pi, 64);
    ProblemSpec spec = eigenmode_problem(delta, {{1, 1.0}}, 1.0);
    ExactProblem exact(delta, {{1, 1.0}}, 1.0);
    auto exact_fn = exact_solution_fn(exact);

    std::vector<int> Ms = {128, 256, 512};
    std::vector<double> errs;
    for (int M : Ms) {
        TimeGrid time(1.0, M, 1.0);
        SolutionField u = solve(spec, space, time, exec);
        std::vector<double> ex(static_cast<std::size_t>(space.cells()) + 1);
        for (int i = 0; i <= space.cells(); ++i)
            ex[static_cast<std::size_t>(i)] = exact_fn(space.node(i), 1.0);
        errs.push_back(kernels::max_abs_diff(u.row(M), ex.data(), ex.size(), exec));
    }
    out.checks.push_back(
        make_check("example1", "solver-error-at-T(M=512)", errs.back(), 0.0, 5e-2));
    for (std::size_t i = 1; i < errs.size(); ++i) {
        Check c = make_check("example1",
                             "solver-error-ratio(M=" + std::to_string(Ms[i]) + "/" +
                                 std::to_string(Ms[i - 1]) + ")",
                             errs[i] / errs[i - 1], 0.0, 1.0);
        c.pass = errs[i] < errs[i - 1];
        out.checks.push_back(c);
    }
    return out;
}

CheckList repro_example1() {
    CheckList out = layer_exponent_checks();
    out.append(limit_nonzero_check());
    return out;
}

CheckList repro_example2(kernels::Exec exec) {
    CheckList out = collapse_checks(exec);
    out.append(residual_gate_checks());
    return out;
}

CheckList repro_remark24(kernels::Exec exec) { return order_reduction_checks(exec); }

} // namespace fraclab
