#include <fraclab/caputo.hpp>
#include <fraclab/fitting.hpp>

#include <cmath>
#include <sstream>

namespace fraclab {

TimeGrid::TimeGrid(double T, int M, double grading) : T_(T), M_(M), r_(grading) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be > 0");
    if (M < 1) throw std::invalid_argument("TimeGrid: need at least one interval");
    if (!(grading >= 1.0)) throw std::invalid_argument("TimeGrid: grading must be >= 1");
    nodes_.resize(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) {
        double frac = static_cast<double>(j) / M;
        nodes_[static_cast<std::size_t>(j)] =
            r_ == 1.0 ? T * frac : T * std::pow(frac, r_);
    }
    nodes_.front() = 0.0;
    nodes_.back() = T;
    for (int j = 1; j <= M; ++j)
        if (!(nodes_[static_cast<std::size_t>(j)] > nodes_[static_cast<std::size_t>(j) - 1]))
            throw std::invalid_argument("TimeGrid: nodes not strictly increasing");
}

SampledFunction::SampledFunction(TimeGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.nodes().size())
        throw std::invalid_argument("SampledFunction: values/grid size mismatch");
}

SampledFunction SampledFunction::sample(const TimeGrid& g,
                                        const std::function<double(double)>& fn) {
    std::vector<double> v;
    v.reserve(g.nodes().size());
    for (double t : g.nodes()) v.push_back(fn(t));
    return SampledFunction(g, std::move(v));
}

namespace {

// tanh-sinh quadrature of int_0^t (t-s)^{mu-1} h(s) ds.
//
// Nodes s = t/(1 + e^{-2y}), y = (pi/2) sinh(tau); the distances to both
// endpoints are computed directly from y, so s never collapses onto an
// endpoint and integrable singularities of h at s=0 (and of the kernel at
// s=t) are sampled at representable distances. Trapezoid levels halve the
// step until two consecutive results agree within tol.
double tanh_sinh_kernel_integral(const std::function<double(double)>& h, double t,
                                 double mu, double tol) {
    constexpr double kTauMax = 6.0;
    constexpr int kMaxLevel = 11;
    const double half_pi = 1.5707963267948966;

    auto node_value = [&](double tau) -> double {
        double y = half_pi * std::sinh(tau);
        double e2y = std::exp(2.0 * y);     // overflows only past tau ~ 6.3
        double d_right = t / (1.0 + e2y);   // t - s
        double d_left = t / (1.0 + 1.0 / e2y);
        if (d_right <= 0.0 || d_left <= 0.0) return 0.0; // underflow: negligible node
        double sech = 2.0 / (std::exp(y) + std::exp(-y));
        double w = (t / 2.0) * half_pi * std::cosh(tau) * sech * sech;
        double v = w * std::pow(d_right, mu - 1.0) * h(d_left);
        return std::isfinite(v) ? v : 0.0;
    };

    double step = 0.75;
    double sum = node_value(0.0);
    for (double tau = step; tau <= kTauMax; tau += step)
        sum += node_value(tau) + node_value(-tau);
    double prev = sum * step;

    for (int level = 1; level <= kMaxLevel; ++level) {
        step *= 0.5;
        for (double tau = step; tau <= kTauMax; tau += 2.0 * step)
            sum += node_value(tau) + node_value(-tau);
        double cur = sum * step;
        if (level >= 3 && std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    std::ostringstream os;
    os << "caputo_quadrature: refinement exhausted above tolerance " << tol;
    throw quadrature_error(os.str());
}

} // namespace

double caputo_quadrature(const std::function<double(double)>& upper_deriv,
                         const FractionalOrder& delta, double t, double tol) {
    if (!(t > 0.0)) throw std::domain_error("caputo_quadrature: t must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("caputo_quadrature: tol must be > 0");
    double mu = delta.ceiling() - delta.value();
    double gm = gamma(mu);
    double raw = tanh_sinh_kernel_integral(upper_deriv, t, mu, 0.25 * tol * gm);
    return raw / gm;
}

SampledFunction l1_operator(const SampledFunction& f, const FractionalOrder& delta,
                            kernels::Exec exec) {
    if (delta.ceiling() != 1)
        throw std::invalid_argument("l1_operator: requires delta in (0,1)");
    int m = f.grid.intervals();
    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    kernels::l1_apply(f.grid.nodes().data(), f.values.data(), m, delta.value(),
                      1.0 / gamma(2.0 - delta.value()), out.data(), exec);
    return SampledFunction(f.grid, std::move(out));
}

SampledFunction l2_operator(const SampledFunction& f, const FractionalOrder& delta,
                            double phi1, kernels::Exec exec) {
    if (delta.ceiling() != 2)
        throw std::invalid_argument("l2_operator: requires delta in (1,2)");
    if (!f.grid.uniform())
        throw std::invalid_argument("l2_operator: uniform grid required");
    int m = f.grid.intervals();
    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    kernels::l2_apply(f.grid.nodes().data(), f.values.data(), m, delta.value(),
                      1.0 / gamma(3.0 - delta.value()), phi1, out.data(), exec);
    return SampledFunction(f.grid, std::move(out));
}

CatalogFunction catalog_lookup(const std::string& id, const FractionalOrder& delta,
                               double T) {
    const double d = delta.value();
    const int c = delta.ceiling();
    auto nan = std::nan("");
    if (id == "t2") {
        return CatalogFunction{
            "t2",
            [](double t) { return t * t; },
            [](double t) { return 2.0 * t; },
            [](double) { return 2.0; },
            [d](double t) { return 2.0 * std::pow(t, 2.0 - d) / gamma(3.0 - d); },
            c == 1 ? 2.0 * T : 2.0,
            true};
    }
    if (id == "t3") {
        return CatalogFunction{
            "t3",
            [](double t) { return t * t * t; },
            [](double t) { return 3.0 * t * t; },
            [](double t) { return 6.0 * t; },
            [d](double t) { return 6.0 * std::pow(t, 3.0 - d) / gamma(4.0 - d); },
            c == 1 ? 3.0 * T * T : 6.0 * T,
            true};
    }
    if (id == "sin") {
        return CatalogFunction{
            "sin",
            [](double t) { return std::sin(t); },
            [](double t) { return std::cos(t); },
            [](double t) { return -std::sin(t); },
            nullptr,
            1.0,
            true};
    }
    if (id == "exp") {
        return CatalogFunction{
            "exp",
            [](double t) { return std::exp(t); },
            [](double t) { return std::exp(t); },
            [](double t) { return std::exp(t); },
            nullptr,
            std::exp(T),
            true};
    }
    if (id == "expm1mt") {
        return CatalogFunction{
            "expm1mt",
            [](double t) { return std::expm1(t) - t; },
            [](double t) { return std::expm1(t); },
            [](double t) { return std::exp(t); },
            nullptr,
            c == 1 ? std::expm1(T) : std::exp(T),
            true};
    }
    if (id == "tpow") {
        // t^delta: the ceil-th derivative blows up at t = 0, so no finite
        // bound exists; its Caputo derivative is the constant Gamma(delta+1).
        double gd1 = gamma(d + 1.0);
        std::function<double(double)> d1 = [d](double t) {
            return d * std::pow(t, d - 1.0);
        };
        std::function<double(double)> d2 = [d](double t) {
            return d * (d - 1.0) * std::pow(t, d - 2.0);
        };
        return CatalogFunction{
            "tpow",
            [d](double t) { return std::pow(t, d); },
            std::move(d1),
            std::move(d2),
            [gd1](double) { return gd1; },
            nan,
            false};
    }
    throw std::invalid_argument("catalog_lookup: unknown function id '" + id + "'");
}

std::vector<std::string> catalog_ids() {
    return {"t2", "t3", "sin", "exp", "expm1mt", "tpow"};
}

DecayBoundReport lemma1_bound_check(const std::string& g_id,
                                    const FractionalOrder& delta,
                                    const std::vector<double>& t_samples,
                                    double T, double quad_tol) {
    CatalogFunction cf = catalog_lookup(g_id, delta, T);
    const auto& integrand = delta.ceiling() == 1 ? cf.d1 : cf.d2;
    double mu = delta.ceiling() - delta.value();
    double bound_gamma = gamma(mu + 1.0);

    DecayBoundReport rep;
    rep.id = g_id;
    rep.delta = delta.value();
    rep.bound_applicable = cf.smooth_on_closed;
    rep.max_excess = -std::numeric_limits<double>::infinity();

    std::vector<double> ts, vs;
    for (double t : t_samples) {
        if (!(t > 0.0 && t <= T))
            throw std::invalid_argument("lemma1_bound_check: samples must lie in (0,T]");
        double v = std::abs(caputo_quadrature(integrand, delta, t, quad_tol));
        double bound = cf.smooth_on_closed
                           ? cf.deriv_bound * std::pow(t, mu) / bound_gamma
                           : std::nan("");
        rep.samples.push_back({t, v, bound});
        if (cf.smooth_on_closed)
            rep.max_excess = std::max(rep.max_excess, v - bound);
        ts.push_back(t);
        vs.push_back(std::max(v, 1e-300));
    }
    rep.fitted_exponent = ts.size() >= 2 ? loglog_slope(ts, vs) : std::nan("");
    return rep;
}

} // namespace fraclab
