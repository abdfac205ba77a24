#include "heisenwave/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heisenwave {

int thread_count() {
  static const int count = [] {
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("HEISENWAVE_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap > 0 && cap < n) n = cap;
      } catch (const std::exception&) {
        // unparsable value: keep the default
      }
    }
    return n;
  }();
  return count;
}

}  // namespace heisenwave
