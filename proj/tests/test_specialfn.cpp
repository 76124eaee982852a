#include <doctest.h>

#include <fraclab/specialfn.hpp>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace fraclab;

TEST_CASE("fractional order accepts (0,1) u (1,2) only") {
    CHECK(FractionalOrder(0.3).ceiling() == 1);
    CHECK(FractionalOrder(0.999).ceiling() == 1);
    CHECK(FractionalOrder(1.001).ceiling() == 2);
    CHECK(FractionalOrder(1.8).ceiling() == 2);
    CHECK(FractionalOrder(0.5).value() == 0.5);
    CHECK_THROWS_AS(FractionalOrder(0.0), std::domain_error);
    CHECK_THROWS_AS(FractionalOrder(1.0), std::domain_error);
    CHECK_THROWS_AS(FractionalOrder(2.0), std::domain_error);
    CHECK_THROWS_AS(FractionalOrder(-0.5), std::domain_error);
    CHECK_THROWS_AS(FractionalOrder(2.7), std::domain_error);
}

TEST_CASE("gamma hits exact factorials and sqrt(pi)") {
    CHECK(fraclab::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fraclab::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(fraclab::gamma(0.5) == doctest::Approx(oracle::kSqrtPi).epsilon(1e-14));
    CHECK(fraclab::gamma(1.5) == doctest::Approx(oracle::kGamma15).epsilon(1e-14));
    CHECK(fraclab::gamma(2.5) == doctest::Approx(oracle::kGamma25).epsilon(1e-14));
}

TEST_CASE("gamma matches std::tgamma to 1e-13 relative on (0, 50]") {
    for (int i = 1; i <= 5000; ++i) {
        double x = 50.0 * i / 5000.0;
        double ref = std::tgamma(x);
        CHECK(std::abs(fraclab::gamma(x) - ref) <= 1e-13 * std::abs(ref));
    }
    for (double x : {1e-3, 1e-2, 0.05, 0.1, 0.2}) {
        double ref = std::tgamma(x);
        CHECK(std::abs(fraclab::gamma(x) - ref) <= 1e-13 * std::abs(ref));
    }
}

TEST_CASE("gamma rejects the closed negative axis and overflow range") {
    CHECK_THROWS_AS(fraclab::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(fraclab::gamma(-3.2), std::domain_error);
    CHECK_THROWS_AS(fraclab::gamma(180.0), std::overflow_error);
}

TEST_CASE("mittag-leffler reduces to exp and cosh") {
    SeriesEvalConfig cfg;
    cfg.abs_tol = 1e-14;
    for (int i = 0; i <= 100; ++i) {
        double z = -5.0 + 10.0 * i / 100.0;
        CHECK(std::abs(mittag_leffler(1.0, z, cfg) - std::exp(z)) <= 1e-12);
    }
    for (int i = 0; i <= 100; ++i) {
        double z = 5.0 * i / 100.0;
        CHECK(std::abs(mittag_leffler(2.0, z, cfg) - std::cosh(std::sqrt(z))) <= 1e-12);
    }
    CHECK(mittag_leffler(1.0, 1.0, cfg) == doctest::Approx(oracle::kE).epsilon(1e-13));
    CHECK(mittag_leffler(2.0, 1.0, cfg) == doctest::Approx(oracle::kCosh1).epsilon(1e-13));
    CHECK(mittag_leffler(0.5, -1.0, cfg) ==
          doctest::Approx(oracle::kMl_half_m1).epsilon(1e-12));
    CHECK(mittag_leffler(0.5, -1.0, cfg) ==
          doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-12));
}

TEST_CASE("mittag-leffler at z = 0 is exactly 1") {
    CHECK(mittag_leffler(0.7, 0.0) == 1.0);
}

TEST_CASE("tightening the truncation never moves the value past the old tolerance") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> alpha_d(0.3, 2.0);
    std::uniform_real_distribution<double> z_d(-3.0, 3.0);
    SeriesEvalConfig loose, tight;
    loose.abs_tol = 1e-6;
    tight.abs_tol = 1e-13;
    for (int i = 0; i < 200; ++i) {
        double alpha = alpha_d(rng), z = z_d(rng);
        double a = mittag_leffler(alpha, z, loose);
        double b = mittag_leffler(alpha, z, tight);
        CHECK(std::abs(a - b) <= loose.abs_tol);
    }
    SeriesEvalConfig more_terms = tight;
    more_terms.max_terms = 4000;
    CHECK(std::abs(mittag_leffler(0.4, -2.5, tight) -
                   mittag_leffler(0.4, -2.5, more_terms)) <= tight.abs_tol);
}

TEST_CASE("mittag-leffler error paths") {
    CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler(0.5, 60.0), std::domain_error);  // beyond arg_bound
    SeriesEvalConfig bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS_AS(mittag_leffler(1.0, 1.0, bad), std::invalid_argument);
    SeriesEvalConfig few;
    few.max_terms = 3;
    CHECK_THROWS_AS(mittag_leffler(0.5, -4.0, few), series_error);
    // alpha small with large negative z: terms grow astronomically first
    CHECK_THROWS_AS(mittag_leffler(0.2, -30.0), series_error);
}

TEST_CASE("series derivative matches difference quotients of E_delta(-t^delta)") {
    SeriesEvalConfig tight;
    tight.abs_tol = 1e-15;
    for (double dv : {0.5, 0.7}) {
        FractionalOrder delta(dv);
        auto g = [&](double t) { return mittag_leffler(dv, -std::pow(t, dv), tight); };
        double numeric = oracle::central_diff(g, 1.0, 1e-6);
        CHECK(std::abs(ml_time_derivative(delta, 1.0, tight) - numeric) <= 1e-8);
    }
    {
        FractionalOrder delta(1.5);
        auto g = [&](double t) { return mittag_leffler(1.5, -std::pow(t, 1.5), tight); };
        double numeric = oracle::central_diff(g, 1.0, 1e-6);
        CHECK(std::abs(ml_time_derivative(delta, 1.0, tight) - numeric) <= 1e-8);
        double numeric2 = oracle::second_central_diff(g, 1.0, 1e-4);
        CHECK(std::abs(ml_second_time_derivative(delta, 1.0, tight) - numeric2) <= 1e-6);
    }
}

TEST_CASE("series derivative leading terms near t = 0") {
    // first derivative, delta < 1: ~ -t^{delta-1}/Gamma(delta)
    {
        FractionalOrder delta(0.5);
        double t = 1e-8;
        double lead = -std::pow(t, -0.5) / oracle::kSqrtPi;  // Gamma(1/2) = sqrt(pi)
        double v = ml_time_derivative(delta, t);
        CHECK(std::abs(v / lead - 1.0) <= 5e-4);
        CHECK(std::abs(lead) == doctest::Approx(5641.895835477563).epsilon(1e-12));
    }
    // first derivative, delta > 1: ~ -t^{delta-1}/Gamma(delta) -> 0
    {
        FractionalOrder delta(1.5);
        double t = 1e-8;
        double lead = -std::pow(t, 0.5) / oracle::kGamma15;
        double v = ml_time_derivative(delta, t);
        CHECK(std::abs(v - lead) <= 1e-8);
        CHECK(std::abs(v) <= 2e-4);
    }
    // second derivative, delta = 1.5: magnitude ~ t^{-1/2}/sqrt(pi), negative
    {
        FractionalOrder delta(1.5);
        double t = 1e-6;
        double v = ml_second_time_derivative(delta, t);
        CHECK(v < 0.0);
        CHECK(std::abs(v / (-std::pow(t, -0.5) / oracle::kSqrtPi) - 1.0) <= 2e-3);
    }
    // second derivative, delta = 1.2: negative, growing like t^{delta-2}
    {
        FractionalOrder delta(1.2);
        double v1 = ml_second_time_derivative(delta, 1e-4);
        double v2 = ml_second_time_derivative(delta, 2e-4);
        CHECK(v1 < 0.0);
        CHECK(v2 < 0.0);
        double slope = std::log(std::abs(v2) / std::abs(v1)) / std::log(2.0);
        CHECK(std::abs(slope - (-0.8)) <= 0.01);
    }
}

TEST_CASE("series derivative rejects bad arguments") {
    FractionalOrder half(0.5), wave(1.5);
    CHECK_THROWS_AS(ml_time_derivative(half, 0.0), std::domain_error);
    CHECK_THROWS_AS(ml_time_derivative(half, -0.2), std::domain_error);
    CHECK_THROWS_AS(ml_second_time_derivative(half, 1.0), std::domain_error);
    CHECK_THROWS_AS(ml_second_time_derivative(wave, 0.0), std::domain_error);
}

TEST_CASE("scaled series match the unit-scale ones at lambda = 1") {
    FractionalOrder delta(0.7);
    CHECK(ml_time_derivative_scaled(delta, 1.0, 0.8) == ml_time_derivative(delta, 0.8));
    FractionalOrder wave(1.4);
    CHECK(ml_second_time_derivative_scaled(wave, 1.0, 0.8) ==
          ml_second_time_derivative(wave, 0.8));
    // lambda = k^2 scaling equals the derivative of E(-lambda t^delta)
    SeriesEvalConfig tight;
    tight.abs_tol = 1e-15;
    auto g = [&](double t) { return mittag_leffler(0.7, -4.0 * std::pow(t, 0.7), tight); };
    double numeric = oracle::central_diff(g, 0.9, 1e-6);
    CHECK(std::abs(ml_time_derivative_scaled(delta, 4.0, 0.9, tight) - numeric) <= 1e-8);
}
