#pragma once

#include <cstddef>
#include <functional>

namespace frameforge {

// Upper bound on worker threads. Defaults to FRAMEFORGE_THREADS when set,
// otherwise hardware concurrency.
std::size_t thread_cap();
void set_thread_cap(std::size_t n);

// Runs body(i) for i in [0, n) over contiguous chunks. Each index is written by
// exactly one worker, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace frameforge
