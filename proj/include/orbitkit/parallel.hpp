#pragma once

#include <cstddef>
#include <functional>

namespace orbitkit {

// Worker count: ORBITKIT_THREADS when set to a positive integer, otherwise
// (unset or 0) the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Work units must write only to their own
/// slot of a pre-sized output; the first exception thrown is rethrown on the
/// calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace orbitkit
