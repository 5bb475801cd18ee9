#pragma once

#include <cstddef>
#include <functional>

namespace chaoscode::detail {

/// Worker count for a request of `jobs` (0 = hardware concurrency), capped at n.
unsigned resolve_jobs(unsigned jobs, std::size_t n);

/// Calls fn(i) for every i in [0, n) on up to `jobs` threads. Results must be
/// written by index; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace chaoscode::detail
