#pragma once

#include <cstddef>
#include <functional>

namespace hogroup {

// Number of worker threads. Reads HOGROUP_THREADS once; defaults to the
// hardware concurrency.
int thread_count();

// Override for the current process (tests). 0 restores the default.
void set_thread_count(int n);

// Runs body(begin, end) over static, contiguous chunks of [0, n). Chunk
// boundaries depend only on n and the thread count, so any reduction done per
// chunk and combined in chunk order is deterministic.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace hogroup
