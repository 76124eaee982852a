#include <doctest.h>

#include <fraclab/kernels.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace fraclab::kernels;

namespace {

struct HistoryData {
    int M, N;
    std::size_t ld;
    std::vector<double> u, w, phi1;
};

HistoryData make_data(int M, int N, unsigned seed) {
    HistoryData d;
    d.M = M;
    d.N = N;
    d.ld = static_cast<std::size_t>(N) + 1;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    d.u.resize(static_cast<std::size_t>(M + 1) * d.ld);
    for (auto& v : d.u) v = dist(rng);
    d.w.resize(static_cast<std::size_t>(M) + 1);
    for (auto& v : d.w) v = std::abs(dist(rng)) + 0.1;
    d.phi1.resize(d.ld);
    for (auto& v : d.phi1) v = dist(rng);
    return d;
}

} // namespace

TEST_CASE("parallel history kernels are bitwise equal to the serial reference") {
    for (auto [M, N] : {std::pair{40, 7}, {17, 129}, {64, 301}}) {
        HistoryData d = make_data(M, N, 42u + static_cast<unsigned>(M));
        std::vector<double> a(d.ld), b(d.ld);
        weighted_diff_history(d.u.data(), d.ld, d.w.data(), M - 1, N + 1, a.data(),
                              Exec::serial);
        weighted_diff_history(d.u.data(), d.ld, d.w.data(), M - 1, N + 1, b.data(),
                              Exec::openmp);
        CHECK(a == b);

        weighted_sd_history(d.u.data(), d.ld, d.w.data(), M - 1, N + 1, d.phi1.data(),
                            0.01, a.data(), Exec::serial);
        weighted_sd_history(d.u.data(), d.ld, d.w.data(), M - 1, N + 1, d.phi1.data(),
                            0.01, b.data(), Exec::openmp);
        CHECK(a == b);
    }
}

TEST_CASE("history kernel matches a direct triple loop") {
    HistoryData d = make_data(12, 5, 7u);
    std::vector<double> got(d.ld);
    int jmax = 9;
    weighted_diff_history(d.u.data(), d.ld, d.w.data(), jmax, d.N + 1, got.data(),
                          Exec::serial);
    for (int i = 0; i <= d.N; ++i) {
        double want = 0.0;
        for (int j = 1; j <= jmax; ++j)
            want += d.w[static_cast<std::size_t>(j)] *
                    (d.u[static_cast<std::size_t>(j) * d.ld + static_cast<std::size_t>(i)] -
                     d.u[static_cast<std::size_t>(j - 1) * d.ld + static_cast<std::size_t>(i)]);
        CHECK(got[static_cast<std::size_t>(i)] == doctest::Approx(want).epsilon(1e-15));
    }
}

TEST_CASE("sd history kernel matches a direct loop with the ghost convention") {
    HistoryData d = make_data(10, 4, 11u);
    double tau = 0.05;
    int jmax = 8;
    std::vector<double> got(d.ld);
    weighted_sd_history(d.u.data(), d.ld, d.w.data(), jmax, d.N + 1, d.phi1.data(), tau,
                        got.data(), Exec::serial);
    for (int i = 0; i <= d.N; ++i) {
        auto U = [&](int n) {
            return d.u[static_cast<std::size_t>(n) * d.ld + static_cast<std::size_t>(i)];
        };
        double want = d.w[1] * ((2.0 * U(1) - 2.0 * U(0)) / (tau * tau) -
                                2.0 * d.phi1[static_cast<std::size_t>(i)] / tau);
        for (int j = 2; j <= jmax; ++j)
            want += d.w[static_cast<std::size_t>(j)] *
                    (U(j) - 2.0 * U(j - 1) + U(j - 2)) / (tau * tau);
        CHECK(got[static_cast<std::size_t>(i)] == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("operator application kernels: serial equals openmp") {
    int M = 200;
    std::vector<double> t(static_cast<std::size_t>(M) + 1), f(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) {
        t[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j) / M, 2.0);
        f[static_cast<std::size_t>(j)] = std::sin(3.0 * t[static_cast<std::size_t>(j)]);
    }
    std::vector<double> a(static_cast<std::size_t>(M) + 1), b(static_cast<std::size_t>(M) + 1);
    l1_apply(t.data(), f.data(), M, 0.5, 1.128, a.data(), Exec::serial);
    l1_apply(t.data(), f.data(), M, 0.5, 1.128, b.data(), Exec::openmp);
    CHECK(a == b);

    for (int j = 0; j <= M; ++j) t[static_cast<std::size_t>(j)] = static_cast<double>(j) / M;
    l2_apply(t.data(), f.data(), M, 1.5, 1.128, 0.3, a.data(), Exec::serial);
    l2_apply(t.data(), f.data(), M, 1.5, 1.128, 0.3, b.data(), Exec::openmp);
    CHECK(a == b);
    CHECK(a[0] == 0.0);
}

TEST_CASE("max_abs_diff agrees across execution modes") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    std::vector<double> a(10007), b(10007);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = dist(rng);
        b[i] = dist(rng);
    }
    double s = max_abs_diff(a.data(), b.data(), a.size(), Exec::serial);
    double p = max_abs_diff(a.data(), b.data(), a.size(), Exec::openmp);
    CHECK(s == p);
    CHECK(s > 0.0);
}
