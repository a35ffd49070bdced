#pragma once

#include <cstddef>
#include <functional>

namespace channelfield {

// Worker count: CHANNELFIELD_THREADS if set (>=1), else hardware concurrency.
unsigned thread_count();

// Runs fn(i) for i in [0,n). Tasks must be independent and should write
// results into per-index slots so the outcome is schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace channelfield
