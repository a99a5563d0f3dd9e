#pragma once

#include <cstddef>
#include <functional>

namespace traj_manifold {

/// Current thread cap. 0 means "auto" (hardware concurrency). Initialized
/// from the TRAJ_MANIFOLD_THREADS environment variable on first use.
int thread_cap();

/// Overrides the thread cap for this process (0 = auto).
void set_thread_cap(int cap);

/// Runs body(i) for i in [begin, end), possibly on several threads.
///
/// Iterations must be independent and write to disjoint slots; under that
/// contract the result does not depend on the number of threads. Exceptions
/// thrown by the body are collected and the first one is rethrown.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

} // namespace traj_manifold
