#pragma once

#include <cstddef>
#include <functional>

namespace optorouter {

/// Runs body(i) for i in [0, count) on up to `workers` threads. Indices are
/// handed out dynamically; the first exception thrown by any body is
/// rethrown on the calling thread after all workers have stopped.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace optorouter
