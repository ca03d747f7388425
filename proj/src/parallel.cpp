#include "wdro/parallel.hpp"

#ifdef WDRO_HAVE_OPENMP
#include <omp.h>
#endif

namespace wdro {

namespace {
int default_threads() {
#ifdef WDRO_HAVE_OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}
}  // namespace

void set_thread_count(int threads) {
#ifdef WDRO_HAVE_OPENMP
  omp_set_num_threads(threads < 1 ? default_threads() : threads);
#else
  (void)threads;
#endif
}

int thread_count() {
#ifdef WDRO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return default_threads();
#endif
}

}  // namespace wdro
