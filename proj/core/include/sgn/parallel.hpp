#pragma once

#include <cstddef>
#include <functional>

namespace sgn {

/// Number of worker threads used by the parallel helpers. 0 selects the
/// hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(i) for i in [0, n). Iterations are distributed over worker
/// threads in contiguous blocks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Sum of fn(i) over [0, n). Partial sums are formed over a fixed tiling that
/// does not depend on the thread count, so the result is bitwise reproducible.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& fn);

}  // namespace sgn
