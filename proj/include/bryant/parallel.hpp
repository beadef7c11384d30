#pragma once

#include <cstddef>
#include <functional>

namespace bryant {

/// Worker count: BRYANT_FORGE_THREADS if set and positive, otherwise the
/// hardware concurrency.
int thread_count();

/// Calls fn(i) for i in [0, n) split into contiguous static chunks. Each index
/// is visited exactly once, so writes to per-index slots are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bryant
