#pragma once

#include <functional>

#include "mlcm/types.hpp"

namespace mlcm {

// Worker cap: MLCM_THREADS when set (>= 1), otherwise hardware concurrency.
int max_threads();

// Runs fn(0..count-1) across up to max_threads() workers (static block
// split). Results must go to disjoint slots; the first exception thrown by
// any worker is rethrown after all join.
void parallel_for(Index count, const std::function<void(Index)>& fn);

}  // namespace mlcm
