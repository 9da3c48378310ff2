#pragma once

#include <cstddef>
#include <functional>

namespace threefold {

// Chunked parallel loop over [0, n). Workers write to disjoint index slots;
// results are deterministic regardless of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace threefold
