#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace icbell {

// Resolves a --jobs style worker count: 0 means "use all hardware threads".
inline int resolve_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs <= 0) return omp_get_max_threads();
  return jobs;
#else
  (void)jobs;
  return 1;
#endif
}

// Runs fn(i) for i in [0, count). Results must be written to preallocated
// per-index storage so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(std::int64_t count, int jobs, Fn&& fn) {
#ifdef _OPENMP
  const int workers = resolve_jobs(jobs);
  if (workers > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
#else
  (void)jobs;
#endif
  for (std::int64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace icbell
