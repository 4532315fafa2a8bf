#pragma once

#include <cstddef>
#include <functional>

namespace amh::parallel {

// Process-wide worker cap used by parallel_for; 0 restores the default
// (hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

// Number of workers parallel_for would actually launch for n items.
unsigned effective_threads(std::size_t n_items);

// Runs fn(begin, end) over a partition of [0, n) into one contiguous chunk
// per worker.  Callers must make chunks independent (e.g. write to disjoint
// preallocated slots) so results never depend on the worker count.  The
// first exception thrown by any chunk is rethrown on the calling thread.
void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn);

// Element-wise convenience wrapper over parallel_for_chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace amh::parallel
