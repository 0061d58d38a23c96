#ifndef OMNI_PARALLEL_HPP
#define OMNI_PARALLEL_HPP

#include <complex>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace omni {

inline void set_max_threads(int n) {
#if defined(_OPENMP)
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Row-parallel loop. Each row is computed independently, so results are
// bitwise identical for any thread count.
template <typename Fn>
inline void parallel_rows(int height, Fn&& fn) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (int y = 0; y < height; ++y) fn(y);
}

// Deterministic reduction: per-row partial sums combined in fixed row order.
// The partition is the row index, never the thread id, so the result does
// not depend on the number of threads.
template <typename Fn>
inline double sum_over_rows(int height, Fn&& row_sum) {
  std::vector<double> partial(static_cast<std::size_t>(height), 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (int y = 0; y < height; ++y) partial[y] = row_sum(y);
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

template <typename Fn>
inline std::complex<double> csum_over_rows(int height, Fn&& row_sum) {
  std::vector<std::complex<double>> partial(static_cast<std::size_t>(height));
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (int y = 0; y < height; ++y) partial[y] = row_sum(y);
  std::complex<double> total(0.0, 0.0);
  for (const auto& v : partial) total += v;
  return total;
}

}  // namespace omni

#endif
