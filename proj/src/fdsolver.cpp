#include <fraclab/fdsolver.hpp>
#include <fraclab/exactsol.hpp>
#include <fraclab/fitting.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace fraclab {

namespace {

constexpr int kEllipticitySamplesPerAxis = 101;
constexpr double kCompatibilityTol = 1e-12;

// In-place Thomas elimination; sub/sup are offset so row i couples
// sub[i], diag[i], sup[i]. Throws on a vanishing pivot.
void thomas_solve(std::vector<double>& sub, std::vector<double>& diag,
                  std::vector<double>& sup, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    double scale = 0.0;
    for (double d : diag) scale = std::max(scale, std::abs(d));
    const double floor = std::max(scale, 1.0) * 1e-14;
    if (std::abs(diag[0]) < floor)
        throw singular_system_error("tridiagonal solve: zero pivot at row 0");
    for (std::size_t i = 1; i < n; ++i) {
        double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
        if (std::abs(diag[i]) < floor) {
            std::ostringstream os;
            os << "tridiagonal solve: zero pivot at row " << i;
            throw singular_system_error(os.str());
        }
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

} // namespace

ProblemSpec::ProblemSpec(ProblemData d) : d_(std::move(d)) {
    if (!(d_.b > d_.a)) throw std::invalid_argument("ProblemSpec: need b > a");
    if (!(d_.T > 0.0)) throw std::invalid_argument("ProblemSpec: need T > 0");
    for (auto [fn, name] : {std::pair<const SpaceTimeFn&, const char*>{d_.p, "p"},
                            {d_.q, "q"},
                            {d_.r, "r"},
                            {d_.f, "f"}})
        if (!fn) throw std::invalid_argument(std::string("ProblemSpec: coefficient ") +
                                             name + " missing");
    if (!d_.psi_a || !d_.psi_b || !d_.phi0)
        throw std::invalid_argument("ProblemSpec: boundary/initial data missing");
    if (d_.delta.ceiling() == 2 && !d_.phi1)
        throw std::invalid_argument("ProblemSpec: phi1 required for delta in (1,2)");
    if (d_.delta.ceiling() == 1 && d_.phi1)
        throw std::invalid_argument("ProblemSpec: phi1 only applies to delta in (1,2)");

    const int S = kEllipticitySamplesPerAxis;
    p_min_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < S; ++i) {
        double x = d_.a + (d_.b - d_.a) * i / (S - 1);
        for (int j = 0; j < S; ++j) {
            double t = d_.T * j / (S - 1);
            p_min_ = std::min(p_min_, d_.p(x, t));
        }
    }
    ellipticity_samples_ = S * S;
    if (!(p_min_ > 0.0)) {
        std::ostringstream os;
        os << "ProblemSpec: not uniformly elliptic, sampled min p = " << p_min_;
        throw std::invalid_argument(os.str());
    }

    double ca = std::abs(d_.phi0(d_.a) - d_.psi_a(0.0));
    double cb = std::abs(d_.phi0(d_.b) - d_.psi_b(0.0));
    if (ca > kCompatibilityTol || cb > kCompatibilityTol) {
        std::ostringstream os;
        os << "ProblemSpec: corner compatibility phi0 = psi(.,0) violated by "
           << std::max(ca, cb);
        throw std::invalid_argument(os.str());
    }
}

SpaceGrid::SpaceGrid(double a, double b, int N) : N_(N) {
    if (N < 2) throw std::invalid_argument("SpaceGrid: need at least 2 cells");
    if (!(b > a)) throw std::invalid_argument("SpaceGrid: need b > a");
    h_ = (b - a) / N;
    nodes_.resize(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) nodes_[static_cast<std::size_t>(i)] = a + h_ * i;
    nodes_.back() = b;
}

SolutionField::SolutionField(SpaceGrid s, TimeGrid t)
    : space_(std::move(s)), time_(std::move(t)),
      v_(static_cast<std::size_t>(time_.intervals() + 1) *
             static_cast<std::size_t>(space_.cells() + 1),
         0.0) {}

double SolutionField::backward_dt(int n, int i) const {
    if (n < 1) throw std::invalid_argument("backward_dt: needs n >= 1");
    return (at(n, i) - at(n - 1, i)) / time_.step(n);
}

SolutionField solve(const ProblemSpec& spec, const SpaceGrid& space,
                    const TimeGrid& time, kernels::Exec exec) {
    const ProblemData& pd = spec.data();
    const int N = space.cells();
    const int M = time.intervals();
    const double h = space.spacing();
    const int ceil_ = pd.delta.ceiling();
    const double delta = pd.delta.value();
    if (std::abs(space.node(0) - pd.a) > 0 || std::abs(space.node(N) - pd.b) > 0)
        throw std::invalid_argument("solve: space grid does not span [a,b]");
    if (std::abs(time.horizon() - pd.T) > 0)
        throw std::invalid_argument("solve: time grid horizon differs from spec");
    if (ceil_ == 2 && !time.uniform())
        throw std::invalid_argument("solve: delta in (1,2) requires a uniform time grid");

    SolutionField u(space, time);
    for (int i = 0; i <= N; ++i) u.at(0, i) = pd.phi0(space.node(i));

    // Mesh-Peclet check for the central convection stencil.
    double qmax = 0.0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= 8; ++j)
            qmax = std::max(qmax, std::abs(pd.q(space.node(i), pd.T * j / 8.0)));
    if (h * qmax / (2.0 * spec.p_min()) >= 1.0) {
        std::ostringstream os;
        os << "mesh Peclet number " << h * qmax / (2.0 * spec.p_min())
           << " >= 1; central convection may oscillate";
        u.warnings.push_back(os.str());
    }

    std::vector<double> phi1v;
    if (ceil_ == 2) {
        phi1v.resize(static_cast<std::size_t>(N) + 1);
        for (int i = 0; i <= N; ++i) phi1v[static_cast<std::size_t>(i)] = pd.phi1(space.node(i));
    }

    const double inv_g2 = ceil_ == 1 ? 1.0 / gamma(2.0 - delta) : 0.0;
    const double inv_g3 = ceil_ == 2 ? 1.0 / gamma(3.0 - delta) : 0.0;
    const std::vector<double>& t = time.nodes();
    const std::size_t ld = static_cast<std::size_t>(N) + 1;

    std::vector<double> w(static_cast<std::size_t>(M) + 1);
    std::vector<double> hist(ld);
    std::vector<double> sub(static_cast<std::size_t>(N) - 1),
        diag(static_cast<std::size_t>(N) - 1), sup(static_cast<std::size_t>(N) - 1),
        rhs(static_cast<std::size_t>(N) - 1);
    const double tau = time.step(1);
    const int nbh = std::min(kernels::history_blocks(), N + 1);
    const bool par = exec == kernels::Exec::openmp;
    std::exception_ptr level_error = nullptr;
    std::atomic<bool> failed{false};
    double an = 0.0;

    auto stash_error = [&] {
#ifdef _OPENMP
#pragma omp critical(fraclab_solve_error)
#endif
        {
            if (!failed.load()) {
                level_error = std::current_exception();
                failed.store(true);
            }
        }
    };

    // One parallel region spans the whole time loop. Per level, the history
    // accumulation and the row assembly are shared across column blocks while
    // the O(n) weights and the tridiagonal elimination run in `single`.
    // Each output element is produced by exactly one block in a fixed
    // accumulation order, so the result is identical across thread counts and
    // to the serial path. Coefficient callables are invoked concurrently and
    // must be pure. Exceptions cannot cross the region boundary; they are
    // stashed and rethrown afterwards.
#ifdef _OPENMP
#pragma omp parallel if (par) default(shared)
#endif
    {
        for (int n = 1; n <= M; ++n) {
#ifdef _OPENMP
#pragma omp single
#endif
            {
                try {
                    const double tn = t[static_cast<std::size_t>(n)];
                    if (ceil_ == 1) {
                        for (int j = 1; j <= n; ++j)
                            w[static_cast<std::size_t>(j)] =
                                (std::pow(tn - t[static_cast<std::size_t>(j) - 1],
                                          1.0 - delta) -
                                 std::pow(tn - t[static_cast<std::size_t>(j)],
                                          1.0 - delta)) *
                                inv_g2 / time.step(j);
                        an = w[static_cast<std::size_t>(n)];
                    } else {
                        for (int j = 1; j <= n; ++j)
                            w[static_cast<std::size_t>(j)] =
                                (std::pow(tn - t[static_cast<std::size_t>(j) - 1],
                                          2.0 - delta) -
                                 std::pow(tn - t[static_cast<std::size_t>(j)],
                                          2.0 - delta)) *
                                inv_g3;
                        an = (n == 1 ? 2.0 : 1.0) * w[static_cast<std::size_t>(n)] /
                             (tau * tau);
                    }
                } catch (...) {
                    stash_error();
                }
            }
            if (failed.load()) break;

            // history sweep over column blocks
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (int b = 0; b < nbh; ++b) {
                int lo = static_cast<int>(static_cast<long long>(b) * (N + 1) / nbh);
                int hi = static_cast<int>(static_cast<long long>(b + 1) * (N + 1) / nbh);
                if (ceil_ == 1)
                    kernels::weighted_diff_history_range(u.row(0), ld, w.data(), n - 1,
                                                         lo, hi, hist.data());
                else
                    kernels::weighted_sd_history_range(u.row(0), ld, w.data(), n - 1,
                                                       lo, hi, phi1v.data(), tau,
                                                       hist.data());
            }

            // row assembly; the known part of the current interval is folded
            // into the right-hand side here
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (int b = 0; b < nbh; ++b) {
                try {
                    const double tn = t[static_cast<std::size_t>(n)];
                    const double Wn = w[static_cast<std::size_t>(n)];
                    int lo = std::max(
                        1, static_cast<int>(static_cast<long long>(b) * (N + 1) / nbh));
                    int hi = std::min(
                        N, static_cast<int>(static_cast<long long>(b + 1) * (N + 1) / nbh));
                    for (int i = lo; i < hi; ++i) {
                        const double x = space.node(i);
                        const double pc = pd.p(x, tn);
                        const double qc = pd.q(x, tn);
                        const double rc = pd.r(x, tn);
                        const std::size_t k = static_cast<std::size_t>(i) - 1;
                        sub[k] = -pc / (h * h) - qc / (2.0 * h);
                        diag[k] = 2.0 * pc / (h * h) + rc + an;
                        sup[k] = -pc / (h * h) + qc / (2.0 * h);
                        double known;
                        if (ceil_ == 1) {
                            known = -an * u.at(n - 1, i);
                        } else if (n == 1) {
                            known = Wn * (-2.0 * u.at(0, i) / (tau * tau) -
                                          2.0 * phi1v[static_cast<std::size_t>(i)] / tau);
                        } else {
                            known = Wn * (-2.0 * u.at(n - 1, i) + u.at(n - 2, i)) /
                                    (tau * tau);
                        }
                        rhs[k] = pd.f(x, tn) - hist[static_cast<std::size_t>(i)] - known;
                    }
                } catch (...) {
                    stash_error();
                }
            }

#ifdef _OPENMP
#pragma omp single
#endif
            {
                if (!failed.load()) try {
                        const double tn = t[static_cast<std::size_t>(n)];
                        const double ua = pd.psi_a(tn);
                        const double ub = pd.psi_b(tn);
                        rhs[0] -= sub[0] * ua;
                        rhs[static_cast<std::size_t>(N) - 2] -=
                            sup[static_cast<std::size_t>(N) - 2] * ub;
                        thomas_solve(sub, diag, sup, rhs);
                        u.at(n, 0) = ua;
                        u.at(n, N) = ub;
                        for (int i = 1; i < N; ++i)
                            u.at(n, i) = rhs[static_cast<std::size_t>(i) - 1];
                    } catch (...) {
                        stash_error();
                    }
            }
            if (failed.load()) break;
        }
    }
    if (level_error) std::rethrow_exception(level_error);
    return u;
}

std::string ConvergenceReport::to_table() const {
    std::ostringstream os;
    os << "      M            dt        err(t=T)      err(global)\n";
    for (const auto& e : entries) {
        os << ' ';
        os.width(6);
        os << e.M << "  ";
        os.setf(std::ios::scientific);
        os.precision(6);
        os << e.dt << "  " << e.err_at_T << "  ";
        if (std::isnan(e.err_global))
            os << "       n/a";
        else
            os << e.err_global;
        os.unsetf(std::ios::scientific);
        os << '\n';
    }
    os.precision(4);
    os << "fitted order (t=T):    " << order_at_T << '\n';
    if (std::isnan(order_global))
        os << "fitted order (global): n/a\n";
    else
        os << "fitted order (global): " << order_global << '\n';
    os << "reference: " << reference << '\n';
    return os.str();
}

ConvergenceReport convergence_study(const ProblemSpec& spec, const SpaceGrid& space,
                                    const std::vector<int>& M_list, double grading,
                                    const SpaceTimeFn& exact, kernels::Exec exec) {
    if (M_list.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 mesh sizes");
    for (std::size_t i = 1; i < M_list.size(); ++i)
        if (M_list[i] <= M_list[i - 1])
            throw std::invalid_argument("convergence_study: M_list must increase strictly");

    const int N = space.cells();
    ConvergenceReport rep;

    std::vector<double> ref_at_T;
    if (!exact) {
        // Fine-mesh reference: 4x the largest M, 2x N.
        SpaceGrid fine_space(spec.a(), spec.b(), 2 * N);
        TimeGrid fine_time(spec.T(), 4 * M_list.back(), grading);
        SolutionField ref = solve(spec, fine_space, fine_time, exec);
        ref_at_T.resize(static_cast<std::size_t>(N) + 1);
        for (int i = 0; i <= N; ++i)
            ref_at_T[static_cast<std::size_t>(i)] = ref.at(fine_time.intervals(), 2 * i);
        std::ostringstream os;
        os << "fine-mesh solve, M = " << 4 * M_list.back() << ", N = " << 2 * N;
        rep.reference = os.str();
    } else {
        rep.reference = "exact solution";
    }

    std::vector<double> Ms, eT, eG;
    for (int M : M_list) {
        TimeGrid time(spec.T(), M, grading);
        SolutionField u = solve(spec, space, time, exec);
        ConvergenceEntry entry;
        entry.M = M;
        entry.dt = spec.T() / M;
        if (exact) {
            double gmax = 0.0, tmax = 0.0;
            std::vector<double> ex(static_cast<std::size_t>(N) + 1);
            for (int n = 0; n <= M; ++n) {
                double tn = time.node(n);
                for (int i = 0; i <= N; ++i)
                    ex[static_cast<std::size_t>(i)] = exact(space.node(i), tn);
                double e = kernels::max_abs_diff(u.row(n), ex.data(),
                                                 static_cast<std::size_t>(N) + 1, exec);
                gmax = std::max(gmax, e);
                if (n == M) tmax = e;
            }
            entry.err_at_T = tmax;
            entry.err_global = gmax;
        } else {
            entry.err_at_T = kernels::max_abs_diff(u.row(M), ref_at_T.data(),
                                                   static_cast<std::size_t>(N) + 1, exec);
            entry.err_global = std::nan("");
        }
        rep.entries.push_back(entry);
        Ms.push_back(M);
        eT.push_back(entry.err_at_T);
        if (!std::isnan(entry.err_global)) eG.push_back(entry.err_global);
    }
    rep.order_at_T = fit_order(Ms, eT);
    rep.order_global = eG.size() == Ms.size() ? fit_order(Ms, eG) : std::nan("");
    return rep;
}

ProblemSpec eigenmode_problem(const FractionalOrder& delta,
                              const std::vector<EigenMode>& modes, double T) {
    ProblemData d;
    d.a = 0.0;
    d.b = std::numbers::pi;
    d.T = T;
    d.delta = delta;
    d.p = [](double, double) { return 1.0; };
    d.q = [](double, double) { return 0.0; };
    d.r = [](double, double) { return 0.0; };
    d.f = [](double, double) { return 0.0; };
    d.psi_a = [](double) { return 0.0; };
    d.psi_b = [](double) { return 0.0; };
    d.phi0 = [modes](double x) {
        double acc = 0.0;
        for (const auto& m : modes) acc += m.coefficient * std::sin(m.k * x);
        return acc;
    };
    d.phi0_dxx = [modes](double x) {
        double acc = 0.0;
        for (const auto& m : modes)
            acc -= m.coefficient * m.k * m.k * std::sin(m.k * x);
        return acc;
    };
    if (delta.ceiling() == 2) d.phi1 = [](double) { return 0.0; };
    return ProblemSpec(std::move(d));
}

ProblemSpec smooth_manufactured_problem(const FractionalOrder& delta, double T) {
    if (delta.ceiling() != 1)
        throw std::invalid_argument(
            "smooth_manufactured_problem: defined for delta in (0,1)");
    double dv = delta.value();
    double inv_g3 = 1.0 / gamma(3.0 - dv);
    ProblemData d;
    d.a = 0.0;
    d.b = std::numbers::pi;
    d.T = T;
    d.delta = delta;
    d.p = [](double, double) { return 1.0; };
    d.q = [](double, double) { return 0.0; };
    d.r = [](double, double) { return 0.0; };
    // f = D_t^delta(1+t^2) sin x + (1+t^2) sin x, with
    // D_t^delta(1+t^2) = 2 t^{2-delta} / Gamma(3-delta).
    d.f = [dv, inv_g3](double x, double t) {
        return (2.0 * std::pow(t, 2.0 - dv) * inv_g3 + 1.0 + t * t) * std::sin(x);
    };
    d.psi_a = [](double) { return 0.0; };
    d.psi_b = [](double) { return 0.0; };
    d.phi0 = [](double x) { return std::sin(x); };
    d.phi0_dxx = [](double x) { return -std::sin(x); };
    return ProblemSpec(std::move(d));
}

SpaceTimeFn smooth_manufactured_solution() {
    return [](double x, double t) { return (1.0 + t * t) * std::sin(x); };
}

} // namespace fraclab
