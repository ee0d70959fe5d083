#pragma once

#include <cstddef>
#include <functional>

namespace fockq {

/// Worker count from FOCKQ_THREADS, else hardware concurrency.
std::size_t default_threads();

/// Calls body(i) for i in [0, n) on up to `threads` workers using static
/// contiguous blocks; results must be written to per-index slots.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace fockq
