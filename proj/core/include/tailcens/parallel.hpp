#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace tailcens {

// Runs fn(i) for i in [begin, end) on up to `threads` workers (0 means all
// hardware threads). Indices are split into contiguous blocks; each index is
// visited exactly once, so writes to per-index slots need no locking. The
// first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace tailcens
