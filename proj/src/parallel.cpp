#include "qttdft/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qttdft {

int thread_count() {
#ifdef _OPENMP
    int nt = omp_get_max_threads();
    if (const char* env = std::getenv("QTTDFT_THREADS")) {
        try {
            int requested = std::stoi(env);
            if (requested >= 1)
                nt = requested;
        } catch (...) {
            // unparsable value: keep the OpenMP default
        }
    }
    return nt < 1 ? 1 : nt;
#else
    return 1;
#endif
}

bool should_parallelize(std::int64_t work) {
#ifdef _OPENMP
    return work >= (1 << 15) && thread_count() > 1;
#else
    (void)work;
    return false;
#endif
}

} // namespace qttdft
