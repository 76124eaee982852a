#include <fraclab/exactsol.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace fraclab {

namespace {

void check_rect(const ExactProblem& p, double x, double t) {
    if (!(x >= 0.0 && x <= std::numbers::pi)) {
        std::ostringstream os;
        os << "exactsol: x = " << x << " outside [0, pi]";
        throw std::domain_error(os.str());
    }
    if (!(t >= 0.0 && t <= p.T)) {
        std::ostringstream os;
        os << "exactsol: t = " << t << " outside [0, " << p.T << "]";
        throw std::domain_error(os.str());
    }
}

} // namespace

ExactProblem::ExactProblem(FractionalOrder d, std::vector<EigenMode> m, double horizon)
    : delta(d), modes(std::move(m)), T(horizon) {
    if (!(T > 0.0)) throw std::invalid_argument("ExactProblem: T must be > 0");
    for (const auto& mode : modes)
        if (mode.k < 1) throw std::invalid_argument("ExactProblem: wavenumbers must be >= 1");
}

double exact_value(const ExactProblem& p, double x, double t,
                   const SeriesEvalConfig& cfg) {
    check_rect(p, x, t);
    double acc = 0.0;
    for (const auto& m : p.modes) {
        double lambda = static_cast<double>(m.k) * m.k;
        double e = t == 0.0 ? 1.0
                            : mittag_leffler(p.delta.value(),
                                             -lambda * std::pow(t, p.delta.value()), cfg);
        acc += m.coefficient * e * std::sin(m.k * x);
    }
    return acc;
}

double exact_dt(const ExactProblem& p, double x, double t, const SeriesEvalConfig& cfg) {
    check_rect(p, x, t);
    if (!(t > 0.0))
        throw std::domain_error("exact_dt: v_t is singular at t = 0");
    double acc = 0.0;
    for (const auto& m : p.modes) {
        double lambda = static_cast<double>(m.k) * m.k;
        acc += m.coefficient * ml_time_derivative_scaled(p.delta, lambda, t, cfg) *
               std::sin(m.k * x);
    }
    return acc;
}

double exact_dtt(const ExactProblem& p, double x, double t, const SeriesEvalConfig& cfg) {
    check_rect(p, x, t);
    if (!(t > 0.0))
        throw std::domain_error("exact_dtt: v_tt is singular at t = 0");
    double acc = 0.0;
    for (const auto& m : p.modes) {
        double lambda = static_cast<double>(m.k) * m.k;
        acc += m.coefficient * ml_second_time_derivative_scaled(p.delta, lambda, t, cfg) *
               std::sin(m.k * x);
    }
    return acc;
}

double singular_exponent_reference(const FractionalOrder& delta, DerivativeOrder which) {
    if (which == DerivativeOrder::second && delta.ceiling() != 2)
        throw std::domain_error(
            "singular_exponent_reference: second derivative needs delta in (1,2)");
    return which == DerivativeOrder::first ? delta.value() - 1.0 : delta.value() - 2.0;
}

std::function<double(double, double)> exact_solution_fn(const ExactProblem& p,
                                                        const SeriesEvalConfig& cfg) {
    struct Cache {
        double t = -1.0;
        std::vector<double> factors;
    };
    auto cache = std::make_shared<Cache>();
    ExactProblem prob = p;
    return [prob, cache, cfg](double x, double t) {
        if (t != cache->t || cache->factors.size() != prob.modes.size()) {
            cache->factors.resize(prob.modes.size());
            for (std::size_t i = 0; i < prob.modes.size(); ++i) {
                double lambda =
                    static_cast<double>(prob.modes[i].k) * prob.modes[i].k;
                cache->factors[i] =
                    t == 0.0 ? 1.0
                             : mittag_leffler(prob.delta.value(),
                                              -lambda * std::pow(t, prob.delta.value()),
                                              cfg);
            }
            cache->t = t;
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < prob.modes.size(); ++i)
            acc += prob.modes[i].coefficient * cache->factors[i] *
                   std::sin(prob.modes[i].k * x);
        return acc;
    };
}

} // namespace fraclab
