#pragma once

#include <cstddef>
#include <functional>

namespace muflux {

// Number of worker threads: hardware concurrency, capped by the
// MUFLUX_THREADS environment variable when it holds a positive integer.
std::size_t worker_count();

// Calls task(i) for every i in [0, count). Tasks must write only to their own
// output slot; the call returns after all tasks finish. The first exception
// thrown by any task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace muflux
