#ifndef MHS_PARALLEL_HPP
#define MHS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mhs {

// Worker count: MHS_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads with static
// contiguous chunks. body must only write to slots owned by i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mhs

#endif  // MHS_PARALLEL_HPP
