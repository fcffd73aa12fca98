#pragma once

#include <cstddef>
#include <functional>

namespace bomp {

/// Worker count from BOMP_THREADS; unset or 0 means hardware concurrency.
std::size_t worker_count();

/// Splits [0, n) into at most `workers` contiguous chunks and runs
/// body(chunk, begin, end) for each. Chunk c covers a lower range than chunk
/// c+1, so callers can fold per-chunk results in chunk order.
void parallel_chunks(std::size_t n, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Number of chunks parallel_chunks will use for (n, workers).
std::size_t chunk_count(std::size_t n, std::size_t workers);

}  // namespace bomp
