#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace delamid::par {

/// Worker count: OpenMP's default, capped by the DELAMID_THREADS env var.
inline int max_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("DELAMID_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

/// Data-parallel loop over [0, n). Body must be independent per index.
/// Falls back to a plain loop without OpenMP or with a single worker.
template <class F>
inline void parallel_for(int n, F&& body) {
  const int workers = max_threads();
#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  (void)workers;
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace delamid::par
