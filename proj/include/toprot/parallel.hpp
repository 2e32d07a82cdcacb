#pragma once

#include <cstddef>
#include <functional>

namespace toprot {

// Worker count for grid scans: TOPROT_THREADS if set (0 = auto), otherwise
// the hardware concurrency.
std::size_t thread_budget();

// Runs body(i) for i in [0, n), possibly on several threads.  Iterations
// must be independent; the first exception (if any) is rethrown on the
// calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace toprot
