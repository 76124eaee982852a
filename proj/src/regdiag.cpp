#include <fraclab/regdiag.hpp>
#include <fraclab/caputo.hpp>
#include <fraclab/fitting.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fraclab {

SteadyOperator SteadyOperator::from_problem(const ProblemSpec& spec) {
    const ProblemData& d = spec.data();
    SteadyOperator op;
    op.a = d.a;
    op.b = d.b;
    op.p0 = [p = d.p](double x) { return p(x, 0.0); };
    op.q0 = [q = d.q](double x) { return q(x, 0.0); };
    op.r0 = [r = d.r](double x) { return r(x, 0.0); };
    if (d.q_dx) op.q0_dx = d.q_dx;
    return op;
}

Assumption1 assumption1_check(const SteadyOperator& op) {
    const int S = kConditionSamples;
    const double w = (op.b - op.a) / (S - 1);

    bool r_nonneg = true;
    for (int i = 0; i < S && r_nonneg; ++i)
        if (op.r0(op.a + w * i) < 0.0) r_nonneg = false;
    if (r_nonneg) return Assumption1::MaxPrinciple;

    bool p_is_one = true;
    for (int i = 0; i < S && p_is_one; ++i)
        if (std::abs(op.p0(op.a + w * i) - 1.0) > 1e-12) p_is_one = false;
    if (p_is_one) {
        auto dq = [&](double x) {
            if (op.q0_dx) return op.q0_dx(x);
            double hh = std::max(1e-6, (op.b - op.a) * 1e-7);
            double xl = std::max(op.a, x - hh), xr = std::min(op.b, x + hh);
            return (op.q0(xr) - op.q0(xl)) / (xr - xl);
        };
        bool energy = true;
        for (int i = 0; i < S && energy; ++i) {
            double x = op.a + w * i;
            if (!(op.r0(x) - 0.5 * dq(x) > 0.0)) energy = false;
        }
        if (energy) return Assumption1::EnergyCondition;
    }
    return Assumption1::Undetermined;
}

double theorem_residual(const ProblemSpec& spec, const SpaceGrid& space) {
    const ProblemData& d = spec.data();
    const int N = space.cells();
    const double h = space.spacing();
    double res = 0.0;
    for (int i = 1; i < N; ++i) {
        double x = space.node(i);
        double ddx = d.phi0_dxx
                         ? d.phi0_dxx(x)
                         : (d.phi0(space.node(i + 1)) - 2.0 * d.phi0(x) +
                            d.phi0(space.node(i - 1))) / (h * h);
        double dx = d.phi0_dx ? d.phi0_dx(x)
                              : (d.phi0(space.node(i + 1)) - d.phi0(space.node(i - 1))) /
                                    (2.0 * h);
        double v = -d.p(x, 0.0) * ddx + d.q(x, 0.0) * dx + d.r(x, 0.0) * d.phi0(x) -
                   d.f(x, 0.0);
        res = std::max(res, std::abs(v));
    }
    return res;
}

std::vector<double> forced_initial_condition(const SteadyOperator& op,
                                             const SpaceFn& f0,
                                             std::pair<double, double> psi0,
                                             const SpaceGrid& space) {
    const int N = space.cells();
    const double h = space.spacing();
    std::vector<double> sub(static_cast<std::size_t>(N) - 1),
        diag(static_cast<std::size_t>(N) - 1), sup(static_cast<std::size_t>(N) - 1),
        rhs(static_cast<std::size_t>(N) - 1);
    for (int i = 1; i < N; ++i) {
        double x = space.node(i);
        double pc = op.p0(x), qc = op.q0(x), rc = op.r0(x);
        std::size_t k = static_cast<std::size_t>(i) - 1;
        sub[k] = -pc / (h * h) - qc / (2.0 * h);
        diag[k] = 2.0 * pc / (h * h) + rc;
        sup[k] = -pc / (h * h) + qc / (2.0 * h);
        rhs[k] = f0(x);
    }
    rhs[0] -= sub[0] * psi0.first;
    rhs[static_cast<std::size_t>(N) - 2] -= sup[static_cast<std::size_t>(N) - 2] * psi0.second;

    // Forward elimination with a pivot floor; a vanishing pivot is evidence
    // that the frozen problem may lack uniqueness.
    double scale = 0.0;
    for (double v : diag) scale = std::max(scale, std::abs(v));
    const double floor = std::max(scale, 1.0) * 1e-14;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
        if (std::abs(diag[i]) < floor)
            throw singular_system_error("forced_initial_condition: singular system");
        double m = sub[i + 1] / diag[i];
        diag[i + 1] -= m * sup[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (std::abs(diag.back()) < floor)
        throw singular_system_error("forced_initial_condition: singular system");
    rhs.back() /= diag.back();
    for (std::size_t i = diag.size() - 1; i-- > 0;)
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];

    std::vector<double> w(static_cast<std::size_t>(N) + 1);
    w.front() = psi0.first;
    w.back() = psi0.second;
    for (int i = 1; i < N; ++i) w[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i) - 1];
    return w;
}

double steady_residual_on_grid(const SteadyOperator& op, const SpaceFn& f0,
                               const std::vector<double>& w, const SpaceGrid& space) {
    const int N = space.cells();
    if (w.size() != static_cast<std::size_t>(N) + 1)
        throw std::invalid_argument("steady_residual_on_grid: size mismatch");
    const double h = space.spacing();
    double res = 0.0;
    for (int i = 1; i < N; ++i) {
        double x = space.node(i);
        std::size_t k = static_cast<std::size_t>(i);
        double ddx = (w[k + 1] - 2.0 * w[k] + w[k - 1]) / (h * h);
        double dx = (w[k + 1] - w[k - 1]) / (2.0 * h);
        res = std::max(res, std::abs(-op.p0(x) * ddx + op.q0(x) * dx + op.r0(x) * w[k] -
                                     f0(x)));
    }
    return res;
}

namespace {

LimitCheckReport limit_check_impl(const std::function<double(double)>& upper,
                                  const FractionalOrder& delta,
                                  std::vector<double> t_samples, double quad_tol,
                                  double zero_tol) {
    if (t_samples.empty())
        throw std::invalid_argument("corollary1_limit_check: no samples");
    for (std::size_t i = 1; i < t_samples.size(); ++i)
        if (!(t_samples[i] < t_samples[i - 1]))
            throw std::invalid_argument(
                "corollary1_limit_check: samples must decrease toward 0");
    LimitCheckReport rep;
    rep.tol = zero_tol;
    for (double t : t_samples) {
        if (!(t > 0.0))
            throw std::invalid_argument("corollary1_limit_check: samples must be > 0");
        rep.samples.push_back({t, caputo_quadrature(upper, delta, t, quad_tol)});
    }
    rep.limit_estimate = rep.samples.back().value;
    rep.vanishes = std::abs(rep.limit_estimate) <= zero_tol;
    return rep;
}

} // namespace

LimitCheckReport corollary1_limit_check(const ExactProblem& p, double x,
                                        std::vector<double> t_samples,
                                        double quad_tol, double zero_tol) {
    if (p.delta.ceiling() == 1) {
        auto upper = [&p, x](double s) { return exact_dt(p, x, s); };
        return limit_check_impl(upper, p.delta, std::move(t_samples), quad_tol, zero_tol);
    }
    auto upper = [&p, x](double s) { return exact_dtt(p, x, s); };
    return limit_check_impl(upper, p.delta, std::move(t_samples), quad_tol, zero_tol);
}

LimitCheckReport corollary1_limit_check(const std::function<double(double)>& upper_deriv,
                                        const FractionalOrder& delta,
                                        std::vector<double> t_samples,
                                        double quad_tol, double zero_tol) {
    return limit_check_impl(upper_deriv, delta, std::move(t_samples), quad_tol, zero_tol);
}

double estimate_singularity_exponent(const std::vector<double>& t,
                                     const std::vector<double>& value) {
    if (t.size() != value.size())
        throw std::invalid_argument("estimate_singularity_exponent: size mismatch");
    if (t.size() < 4)
        throw std::invalid_argument("estimate_singularity_exponent: need >= 4 samples");
    double tmin = t[0], tmax = t[0];
    for (double v : t) {
        if (!(v > 0.0))
            throw std::invalid_argument("estimate_singularity_exponent: t must be > 0");
        tmin = std::min(tmin, v);
        tmax = std::max(tmax, v);
    }
    if (tmax / tmin < 10.0)
        throw std::invalid_argument(
            "estimate_singularity_exponent: samples span less than one decade");
    for (double v : value)
        if (!(std::abs(v) > 0.0))
            throw std::invalid_argument(
                "estimate_singularity_exponent: values must be nonzero");
    return loglog_slope(t, value);
}

std::string DiagnosticsReport::to_text(const SpaceGrid& space) const {
    std::ostringstream os;
    os.precision(6);
    os << "incompatibility residual |L0 phi0 - f(.,0)|_inf = " << incompat_residual
       << "  (discretization floor " << residual_floor << ")\n";
    os << "uniqueness condition for the frozen problem: ";
    switch (assumption1) {
        case Assumption1::MaxPrinciple:
            os << "maximum principle (r(.,0) >= 0)";
            break;
        case Assumption1::EnergyCondition:
            os << "energy condition (p0 = 1, r0 - q0'/2 > 0)";
            break;
        case Assumption1::Undetermined:
            os << "undetermined";
            break;
    }
    os << "  [" << condition_samples << " samples]\n";
    if (forced_phi0) {
        double mx = 0.0;
        for (double v : *forced_phi0) mx = std::max(mx, std::abs(v));
        os << "forced initial condition computed on " << space.cells() + 1
           << " nodes, |w|_inf = " << mx << '\n';
    } else {
        os << "forced initial condition not computed (uniqueness undetermined)\n";
    }
    os << "collapse to the zero solution: " << (collapse ? "yes" : "no") << '\n';
    if (fitted_exponent)
        os << "fitted layer exponent of |u_t| near t = 0: " << *fitted_exponent << '\n';
    return os.str();
}

DiagnosticsReport diagnose(const ProblemSpec& spec, const SpaceGrid& space,
                           const DiagnoseOptions& opts) {
    const ProblemData& d = spec.data();
    DiagnosticsReport rep;
    rep.incompat_residual = theorem_residual(spec, space);
    rep.residual_floor = 10.0 * space.spacing() * space.spacing();
    rep.condition_samples = kConditionSamples;

    SteadyOperator op = SteadyOperator::from_problem(spec);
    rep.assumption1 = assumption1_check(op);

    rep.collapse = false;
    if (rep.assumption1 != Assumption1::Undetermined) {
        auto f0 = [&d](double x) { return d.f(x, 0.0); };
        rep.forced_phi0 = forced_initial_condition(
            op, f0, {d.psi_a(0.0), d.psi_b(0.0)}, space);

        double forced_max = 0.0;
        for (double v : *rep.forced_phi0) forced_max = std::max(forced_max, std::abs(v));
        double data_max = 0.0;
        const int S = 256;
        for (int i = 0; i <= S; ++i) {
            double x = d.a + (d.b - d.a) * i / S;
            double t = d.T * i / S;
            data_max = std::max({data_max, std::abs(d.f(x, 0.0)), std::abs(d.f(x, t)),
                                 std::abs(d.psi_a(t)), std::abs(d.psi_b(t))});
        }
        rep.collapse = forced_max <= 1e-12 && data_max <= 1e-12;
    }

    if (opts.estimate_layer && spec.delta().ceiling() == 1) {
        TimeGrid tg(spec.T(), opts.layer_M, opts.layer_grading);
        SolutionField u = solve(spec, space, tg, opts.exec);
        // Backward quotients approximate u_t at interior sample times; grading
        // packs enough levels into the fitting window near t = 0.
        int mid = space.cells() / 2;
        std::vector<double> ts, vs;
        for (int n = 2; n <= opts.layer_M; ++n) {
            double tn = tg.node(n);
            if (tn > 0.05 * spec.T()) break;
            double q = u.backward_dt(n, mid);
            if (std::abs(q) > 0.0) {
                ts.push_back(0.5 * (tg.node(n) + tg.node(n - 1)));
                vs.push_back(q);
            }
        }
        if (ts.size() >= 4 && ts.back() / ts.front() >= 10.0) {
            rep.fitted_exponent = estimate_singularity_exponent(ts, vs);
            rep.layer_t = std::move(ts);
            rep.layer_value = std::move(vs);
        }
    }
    return rep;
}

} // namespace fraclab
