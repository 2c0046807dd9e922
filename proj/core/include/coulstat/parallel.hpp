#pragma once

#include <functional>

namespace coulstat {

// Worker cap: COULOMB_LINSTAT_THREADS when set (>= 1), otherwise the
// hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n); fn writes to per-index slots so assembly
// order is deterministic. Serial when n is small or only one worker.
void parallel_for(long n, const std::function<void(long)>& fn);

} // namespace coulstat
