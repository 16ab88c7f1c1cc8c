#ifndef UNITARY_PARALLEL_HPP
#define UNITARY_PARALLEL_HPP

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace unitary {

/// Every parallel kernel takes one of these; Exec::serial runs the plain
/// reference loop, Exec::parallel the OpenMP version. Results must agree
/// bit-for-bit (all reductions are exact, so order cannot matter).
enum class Exec { serial, parallel };

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Applies the THREADS environment variable, if present, to the OpenMP
/// runtime. Called once by the CLI before dispatching.
inline void apply_thread_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

}  // namespace unitary

#endif
