#pragma once

#include <cstddef>
#include <functional>

namespace gns {

/// Worker count from GNS_THREADS (default 1). Values < 1 or unparsable fall back to 1.
int thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n) using up to
/// thread_count() threads. Chunk boundaries depend only on n and the thread
/// count, so per-index results are independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace gns
