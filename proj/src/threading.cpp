#include "omegabw/threading.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace omegabw {

int worker_threads() {
    if (const char* env = std::getenv("OMEGA_BW_THREADS")) {
        try {
            const int k = std::stoi(env);
            if (k > 0) return k;
        } catch (...) {
            // unparsable value: fall through to the machine default
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace omegabw
