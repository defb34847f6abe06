#ifndef FVPG_PARALLEL_HPP
#define FVPG_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fvpg {

/// Worker cap for the OpenMP kernels. Defaults to 1 (serial); raised via
/// set_thread_count() or, in the executables, from the FVPG_THREADS env var.
int thread_count();
void set_thread_count(int n);

/// Reads FVPG_THREADS; returns 1 when unset or unparsable.
int env_thread_count();

/// Runs body(i) for i in [0, n). Every parallel loop in this project writes
/// to disjoint slots, so the result is bit-identical for any thread count.
template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
#ifdef _OPENMP
  const int nt = thread_count();
  if (nt > 1 && n > 1) {
#pragma omp parallel for num_threads(nt) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace fvpg

#endif
