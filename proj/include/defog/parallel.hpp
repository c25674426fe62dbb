#pragma once

namespace defog {

// Caps OpenMP worker parallelism from the DEFOG_THREADS environment
// variable, if set to a positive integer. No-op otherwise.
void apply_thread_cap_from_env();

int max_threads();

}  // namespace defog
