#include "backflow/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace backflow {

int apply_thread_limit() {
  if (const char* env = std::getenv("BACKFLOW_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0 && n < omp_get_max_threads()) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace backflow
