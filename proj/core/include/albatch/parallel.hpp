// Chunked parallel-for over an index range. Work is split into fixed-size
// chunks picked up by a small thread team; per-index results must go to
// disjoint slots so the outcome is identical for any thread count.
#pragma once

#include <cstddef>
#include <functional>

namespace albatch {

// Invokes fn(begin, end) over disjoint subranges covering [0, count).
// Chunk boundaries depend only on `count` and `chunk`, never on the number
// of workers.
void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace albatch
