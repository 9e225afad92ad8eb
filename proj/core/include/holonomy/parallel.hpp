#pragma once

#include <cstddef>
#include <functional>

namespace holonomy {

/// Worker cap from HOLONOMY_LAB_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Results must be written to per-index slots;
/// the first exception thrown by any index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace holonomy
