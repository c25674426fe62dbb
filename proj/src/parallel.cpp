#include "defog/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace defog {

void apply_thread_cap_from_env() {
    const char* env = std::getenv("DEFOG_THREADS");
    if (!env) return;
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(std::min(n, omp_get_max_threads()));
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace defog
