#pragma once

#include <cstddef>
#include <functional>

namespace ael {

/// Worker count: AEL_THREADS when set and positive, otherwise the hardware
/// concurrency (AEL_THREADS=0 also means auto).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// processed exactly once; the first exception thrown by any task is rethrown
/// after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ael
