#pragma once

namespace backflow {

// Caps OpenMP parallelism at BACKFLOW_THREADS when that variable is set to a
// positive integer. Returns the resulting thread count.
int apply_thread_limit();
int max_threads();

}  // namespace backflow
