#include <fraclab/kernels.hpp>

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fraclab::kernels {

namespace {

// Column-block decomposition: each block owns a contiguous range of output
// columns and walks the history rows in the serial order, so the values are
// bitwise independent of the partition and of the thread count.
//
// Levels with little history run serially: the fork/join cost would dominate.
constexpr long long kParallelGrain = 1 << 15;

int thread_blocks() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void diff_history_block(const double* u, std::size_t ld, const double* w,
                               int jmax, int lo, int hi, double* out) {
    for (int i = lo; i < hi; ++i) out[i] = 0.0;
    for (int j = 1; j <= jmax; ++j) {
        const double* row = u + static_cast<std::size_t>(j) * ld;
        const double* prev = row - ld;
        const double wj = w[j];
        for (int i = lo; i < hi; ++i) out[i] += wj * (row[i] - prev[i]);
    }
}

inline void sd_history_block(const double* u, std::size_t ld, const double* W,
                             int jmax, int lo, int hi, const double* phi1,
                             double tau, double* out) {
    const double inv_tau2 = 1.0 / (tau * tau);
    const double* r0 = u;
    const double* r1 = u + ld;
    if (jmax >= 1) {
        const double W1 = W[1];
        for (int i = lo; i < hi; ++i)
            out[i] = W1 * ((2.0 * r1[i] - 2.0 * r0[i]) * inv_tau2 - 2.0 * phi1[i] / tau);
    } else {
        for (int i = lo; i < hi; ++i) out[i] = 0.0;
    }
    for (int j = 2; j <= jmax; ++j) {
        const double* rj = u + static_cast<std::size_t>(j) * ld;
        const double* rj1 = rj - ld;
        const double* rj2 = rj1 - ld;
        const double Wj = W[j];
        for (int i = lo; i < hi; ++i)
            out[i] += Wj * (rj[i] - 2.0 * rj1[i] + rj2[i]) * inv_tau2;
    }
}

} // namespace

int history_blocks() { return thread_blocks(); }

void weighted_diff_history_range(const double* u, std::size_t ld, const double* w,
                                 int jmax, int lo, int hi, double* out) {
    diff_history_block(u, ld, w, jmax, lo, hi, out);
}

void weighted_sd_history_range(const double* u, std::size_t ld, const double* W,
                               int jmax, int lo, int hi, const double* phi1,
                               double tau, double* out) {
    sd_history_block(u, ld, W, jmax, lo, hi, phi1, tau, out);
}

void weighted_diff_history(const double* u, std::size_t ld, const double* w,
                           int jmax, int ncols, double* out, Exec exec) {
    const int nb = std::min(thread_blocks(), ncols);
    if (exec == Exec::serial || nb < 2 ||
        static_cast<long long>(jmax) * ncols < kParallelGrain) {
        diff_history_block(u, ld, w, jmax, 0, ncols, out);
        return;
    }
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        int lo = static_cast<int>(static_cast<long long>(b) * ncols / nb);
        int hi = static_cast<int>(static_cast<long long>(b + 1) * ncols / nb);
        diff_history_block(u, ld, w, jmax, lo, hi, out);
    }
}

void weighted_sd_history(const double* u, std::size_t ld, const double* W,
                         int jmax, int ncols, const double* phi1, double tau,
                         double* out, Exec exec) {
    const int nb = std::min(thread_blocks(), ncols);
    if (exec == Exec::serial || nb < 2 ||
        static_cast<long long>(jmax) * ncols < kParallelGrain) {
        sd_history_block(u, ld, W, jmax, 0, ncols, phi1, tau, out);
        return;
    }
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        int lo = static_cast<int>(static_cast<long long>(b) * ncols / nb);
        int hi = static_cast<int>(static_cast<long long>(b + 1) * ncols / nb);
        sd_history_block(u, ld, W, jmax, lo, hi, phi1, tau, out);
    }
}

namespace {

inline double l1_node(const double* t, const double* f, double delta,
                      double inv_gamma, int n) {
    const double tn = t[n];
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) {
        double wnj = (std::pow(tn - t[j - 1], 1.0 - delta) -
                      std::pow(tn - t[j], 1.0 - delta)) *
                     inv_gamma / (t[j] - t[j - 1]);
        acc += wnj * (f[j] - f[j - 1]);
    }
    return acc;
}

inline double l2_node(const double* t, const double* f, int m, double delta,
                      double inv_gamma, double phi1, int n) {
    const double tn = t[n];
    const double tau = t[1] - t[0];
    const double inv_tau2 = 1.0 / (tau * tau);
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) {
        double Wnj = (std::pow(tn - t[j - 1], 2.0 - delta) -
                      std::pow(tn - t[j], 2.0 - delta)) *
                     inv_gamma;
        double sd = j == 1 ? (2.0 * f[1] - 2.0 * f[0]) * inv_tau2 - 2.0 * phi1 / tau
                           : (f[j] - 2.0 * f[j - 1] + f[j - 2]) * inv_tau2;
        acc += Wnj * sd;
    }
    (void)m;
    return acc;
}

} // namespace

void l1_apply(const double* t, const double* f, int m, double delta,
              double inv_gamma, double* out, Exec exec) {
    out[0] = 0.0;
    if (exec == Exec::serial) {
        for (int n = 1; n <= m; ++n) out[n] = l1_node(t, f, delta, inv_gamma, n);
        return;
    }
#pragma omp parallel for schedule(dynamic, 16)
    for (int n = 1; n <= m; ++n) out[n] = l1_node(t, f, delta, inv_gamma, n);
}

void l2_apply(const double* t, const double* f, int m, double delta,
              double inv_gamma, double phi1, double* out, Exec exec) {
    out[0] = 0.0;
    if (exec == Exec::serial) {
        for (int n = 1; n <= m; ++n) out[n] = l2_node(t, f, m, delta, inv_gamma, phi1, n);
        return;
    }
#pragma omp parallel for schedule(dynamic, 16)
    for (int n = 1; n <= m; ++n) out[n] = l2_node(t, f, m, delta, inv_gamma, phi1, n);
}

double max_abs_diff(const double* a, const double* b, std::size_t n, Exec exec) {
    double m = 0.0;
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
#pragma omp parallel for schedule(static) reduction(max : m)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace fraclab::kernels
