#pragma once

#include <cstddef>
#include <functional>

namespace wqed {

// Worker count: WQED_THREADS if set, else hardware concurrency.
unsigned worker_count();
// Runs fn(i) for i in [0, n) on a small thread pool. Exceptions from fn are
// rethrown (first one wins) after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace wqed
