#pragma once

#include <functional>

namespace cchs {

/// Worker count: CCHS_THREADS if set and positive, otherwise hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) split into contiguous chunks across workers.
/// Iterations must be independent; results never depend on the worker count.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace cchs
