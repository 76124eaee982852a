// Timing comparison of the serial reference kernels against the OpenMP
// variants, plus a full solve in both modes. The two paths are bitwise
// equivalent by construction; this reports the speedup only.

#include <fraclab/fdsolver.hpp>
#include <fraclab/kernels.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using fraclab::kernels::Exec;
using clk = std::chrono::steady_clock;

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clk::now();
        fn();
        auto t1 = clk::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void bench_history(int M, int N) {
    std::size_t ld = static_cast<std::size_t>(N) + 1;
    std::vector<double> u(static_cast<std::size_t>(M + 1) * ld);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = std::sin(0.001 * static_cast<double>(i));
    std::vector<double> w(static_cast<std::size_t>(M) + 1, 0.5);
    std::vector<double> out(ld);

    auto run = [&](Exec e) {
        fraclab::kernels::weighted_diff_history(u.data(), ld, w.data(), M, N + 1,
                                                out.data(), e);
    };
    double ts = time_best_of(5, [&] { run(Exec::serial); });
    double tp = time_best_of(5, [&] { run(Exec::openmp); });
    std::printf("history kernel   M=%5d N=%5d   serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
                M, N, ts * 1e3, tp * 1e3, ts / tp);
}

void bench_solve(int M, int N) {
    fraclab::ProblemSpec spec =
        fraclab::eigenmode_problem(fraclab::FractionalOrder(0.5), {{1, 1.0}}, 1.0);
    fraclab::SpaceGrid space(0.0, std::numbers::pi, N);
    fraclab::TimeGrid time(1.0, M, 1.0);

    auto run = [&](Exec e) { (void)fraclab::solve(spec, space, time, e); };
    double ts = time_best_of(3, [&] { run(Exec::serial); });
    double tp = time_best_of(3, [&] { run(Exec::openmp); });
    std::printf("implicit solve   M=%5d N=%5d   serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
                M, N, ts * 1e3, tp * 1e3, ts / tp);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif
    bench_history(512, 1024);
    bench_history(2048, 1024);
    bench_solve(256, 512);
    bench_solve(1024, 1024);
    return 0;
}
