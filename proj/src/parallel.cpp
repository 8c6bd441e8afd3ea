#include "bcp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bcp {

int default_threads() {
  if (const char* env = std::getenv("BCP_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
      // fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

}  // namespace bcp
