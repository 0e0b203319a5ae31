#pragma once

#include <functional>

namespace qfreq {

/// Worker cap: hardware concurrency, overridden by the QFREQ_THREADS
/// environment variable when set.
int max_threads();

/// Runs fn(0..n-1), possibly on several threads. Work items must write only
/// to their own output slots; iteration order is unspecified but results are
/// deterministic because slots are indexed.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace qfreq
