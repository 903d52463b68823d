#pragma once

#include <cstddef>
#include <functional>

namespace gam {

/// Worker count: GAM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, n_tasks) on up to worker_count() threads.
/// Tasks must write only to their own output slots; callers reduce the
/// slots in index order so results do not depend on the worker count.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& task);

}  // namespace gam
