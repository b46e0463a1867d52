#pragma once

#include <functional>

namespace gausspid {

int hardware_threads();

/// Runs fn(i) for i in [begin, end) on up to `threads` threads. Iterations
/// must be independent. The first exception thrown by any iteration is
/// rethrown on the calling thread after all workers join.
void parallel_for(int begin, int end, int threads, const std::function<void(int)>& fn);

}  // namespace gausspid
