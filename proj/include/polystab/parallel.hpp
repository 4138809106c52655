#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polystab/types.hpp"

namespace polystab {

/// Worker count for sweep kernels: OpenMP's max, capped by the
/// POLYSTAB_THREADS environment variable when set. Always >= 1.
inline int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("POLYSTAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n < 1 ? 1 : n;
}

/// Runs f(i) for i in [0, n). Each call must be independent and write only to
/// its own output slot; results are then deterministic regardless of the
/// worker count. Exceptions are captured and rethrown on the calling thread.
template <class F>
void parallel_for(Index n, F&& f) {
  std::exception_ptr err = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (Index i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
#else
  for (Index i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      if (!err) err = std::current_exception();
    }
  }
#endif
  if (err) std::rethrow_exception(err);
}

}  // namespace polystab
