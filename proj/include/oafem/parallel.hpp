#pragma once

#include <cstddef>
#include <functional>

namespace oafem {

// Work is split into fixed-size chunks that do not depend on the worker count,
// and chunk results are combined in chunk order.  Output is therefore
// bit-identical for any setting of OBSTACLE_AFEM_THREADS.
inline constexpr std::size_t kChunkSize = 1024;

// Worker cap from the OBSTACLE_AFEM_THREADS environment variable, read on each
// call; unset, zero or unparsable means the hardware concurrency.
std::size_t worker_count();

// Applies fn(begin, end) to consecutive chunks of [0, n).  fn must only write
// to locations owned by its index range.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Sums chunk_sum(begin, end) over all chunks, accumulating in chunk order.
double chunked_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& chunk_sum);

}  // namespace oafem
