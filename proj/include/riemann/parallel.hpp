#pragma once

#include <cstddef>
#include <functional>

namespace riemann {

/// Worker count: RIEMANN_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n) over contiguous static blocks, one per
/// worker. The first exception by index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace riemann
