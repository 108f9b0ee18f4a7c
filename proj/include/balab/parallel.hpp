#pragma once

#include <cstddef>
#include <functional>

namespace balab {

// Thread budget: min(hardware_concurrency, BALAYAGE_LAB_THREADS when set).
// A value of 1 disables threading entirely.
int thread_budget();

// Runs body(i) for i in [0, n). Work is chunked over the thread budget and
// each index is processed exactly once, so writing to slot i of a
// preallocated buffer is deterministic regardless of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace balab
