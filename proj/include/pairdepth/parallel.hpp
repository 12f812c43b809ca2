#pragma once

#include <cstddef>
#include <functional>

namespace pairdepth {

/// Worker count: PAIRDEPTH_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for every i in [0, count), split into contiguous blocks over
/// thread_count() workers. Callers write results into per-index slots, so the
/// outcome never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace pairdepth
