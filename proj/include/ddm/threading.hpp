#pragma once

#include <cstddef>
#include <functional>

namespace ddm {

// Worker-thread cap: DDM_THREADS env var, else hardware concurrency.
std::size_t max_threads();

// Runs fn(begin, end) over a static partition of [0, n). Each range writes
// only its own outputs, so results are identical for any thread count.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace ddm
