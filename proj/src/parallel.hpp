#pragma once

#include <cstddef>
#include <functional>

namespace twc::detail {

/// Worker count from TWC_THREADS, else hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are fixed by
/// n and the worker count only, and each writes a disjoint range, so results do
/// not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace twc::detail
