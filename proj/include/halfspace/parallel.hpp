#pragma once

#include <cstddef>
#include <functional>

namespace halfspace {

/// Worker count used by parallel_for; 1 runs everything on the calling thread.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs fn(0..count-1) across the worker pool. Nested calls run serially.
/// If any item throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace halfspace
