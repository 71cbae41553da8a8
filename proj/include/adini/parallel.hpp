#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace adini {

/// Worker count used by parallel loops (>= 1). Defaults to the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(begin, end) over contiguous chunks of [0, n), one chunk per worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of term(i) over [0, n). Terms are evaluated in parallel and added in
/// index order, so the result does not depend on the worker count.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace adini
