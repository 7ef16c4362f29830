#pragma once

#include <functional>

namespace spinvalve::detail {

// Run fn(i) for i in [0, n) on up to n_threads workers over disjoint
// contiguous index blocks. n_threads <= 0 picks the hardware count. The
// partition depends only on (n, worker count), never on timing, and
// exceptions from workers are rethrown on the calling thread.
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

}  // namespace spinvalve::detail
