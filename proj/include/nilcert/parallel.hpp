#ifndef NILCERT_PARALLEL_HPP
#define NILCERT_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilcert {

// Caps the number of OpenMP workers for all parallel kernels; 0 keeps the
// runtime default. All kernels are value-deterministic regardless of the
// thread count (integer arithmetic only, reductions combined in fixed order).
inline void set_max_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace nilcert

#endif
