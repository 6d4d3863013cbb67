#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace makeev {

// Execution policy for the data-parallel sample scans. The serial path is the
// reference implementation; the parallel path must produce identical output
// (each index is written exactly once, reductions happen serially afterwards).
enum class Exec { serial, parallel };

namespace kernels {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class T, class Fn>
std::vector<T> tabulate_serial(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

template <class T, class Fn>
std::vector<T> tabulate_parallel(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

template <class T, class Fn>
std::vector<T> tabulate(std::size_t n, Fn&& fn, Exec exec = Exec::parallel) {
  if (exec == Exec::serial) return tabulate_serial<T>(n, fn);
  return tabulate_parallel<T>(n, fn);
}

}  // namespace kernels
}  // namespace makeev
