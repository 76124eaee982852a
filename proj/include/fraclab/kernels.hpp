#pragma once

#include <cstddef>

namespace fraclab::kernels {

// Execution policy for the hot loops. The parallel variants partition output
// elements across threads while keeping each element's accumulation order
// identical to the serial code, so both produce bitwise-equal results.
enum class Exec { serial, openmp };

// out[i] = sum_{j=1}^{jmax} w[j] * (U(j,i) - U(j-1,i))
// U is row-major with leading dimension ld; w is indexed from 1.
// This is the memory term of the discrete Caputo operator for delta in (0,1).
void weighted_diff_history(const double* u, std::size_t ld, const double* w,
                           int jmax, int ncols, double* out, Exec exec);

// Memory term of the discrete operator for delta in (1,2) on a uniform mesh:
//   out[i] = sum_{j=1}^{jmax} W[j] * SD_j(i)
// with SD_j(i) = (U(j,i) - 2U(j-1,i) + U(j-2,i)) / tau^2 for j >= 2 and the
// ghost-corrected first interval SD_1(i) = (2U(1,i) - 2U(0,i))/tau^2 - 2*phi1[i]/tau.
void weighted_sd_history(const double* u, std::size_t ld, const double* W,
                         int jmax, int ncols, const double* phi1, double tau,
                         double* out, Exec exec);

// Column-range workers behind the two kernels, for callers that distribute
// the ranges inside their own parallel region. A worker fills out[lo..hi)
// completely, walking the history rows in ascending order, so any partition
// of [0, ncols) reproduces the single-range result bit for bit.
void weighted_diff_history_range(const double* u, std::size_t ld, const double* w,
                                 int jmax, int lo, int hi, double* out);
void weighted_sd_history_range(const double* u, std::size_t ld, const double* W,
                               int jmax, int lo, int hi, const double* phi1,
                               double tau, double* out);

// Number of column blocks the openmp paths use (the thread count).
int history_blocks();

// Discrete Caputo operator applied to one sampled function (all output
// nodes). t has m+1 nodes, f the matching samples; out[0] = 0 by convention.
// inv_gamma is 1/Gamma(2-delta).
void l1_apply(const double* t, const double* f, int m, double delta,
              double inv_gamma, double* out, Exec exec);

// Uniform-grid counterpart for delta in (1,2); inv_gamma is 1/Gamma(3-delta).
void l2_apply(const double* t, const double* f, int m, double delta,
              double inv_gamma, double phi1, double* out, Exec exec);

double max_abs_diff(const double* a, const double* b, std::size_t n, Exec exec);

} // namespace fraclab::kernels
