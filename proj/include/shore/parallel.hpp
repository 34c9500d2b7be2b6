#pragma once

#include <cstddef>
#include <functional>

namespace shore {

// Worker count from the SHORE_THREADS environment variable; defaults to 1.
std::size_t thread_count();

// Runs fn(i) for i in [0, n). Work items must be independent; each item
// writes only its own output slot, so results are identical for every
// thread count. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace shore
