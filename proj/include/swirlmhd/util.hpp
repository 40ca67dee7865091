#pragma once

#include <functional>
#include <string>

namespace swirlmhd {

/// Worker count: SWIRLMHD_THREADS clamped to [1, hardware_concurrency],
/// defaulting to 1. Read once per process.
int worker_count();

/// Runs fn(begin, end) over a partition of [0, n) into contiguous chunks,
/// one per worker. Writes from different chunks must be disjoint; results
/// are then bitwise independent of the worker count.
void parallel_for(int n, const std::function<void(int, int)>& fn);

/// Shortest-exact decimal then padded to 17 significant digits; locale-free.
std::string format_double(double v);

}  // namespace swirlmhd
