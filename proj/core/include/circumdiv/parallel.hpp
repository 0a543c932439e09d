#pragma once

#include <cstddef>
#include <functional>

namespace circumdiv {

/// Worker count for internal parallel loops: CIRCUMDIV_THREADS if set to a
/// positive integer, else the hardware concurrency (at least 1).
std::size_t thread_count();

/// Splits [0, n) into contiguous chunks and runs body(chunk, begin, end) for
/// each, possibly concurrently. Chunk boundaries depend only on n and
/// chunk_count, so callers that reduce per-chunk results in chunk order get
/// the same answer regardless of thread count.
void parallel_chunks(std::size_t n, std::size_t chunk_count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace circumdiv
