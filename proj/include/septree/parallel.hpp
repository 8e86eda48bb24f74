#pragma once

#include <cstddef>
#include <functional>

namespace septree {

/// Resolves a thread-count request: positive values pass through, anything
/// else falls back to the SEPTREE_THREADS environment variable, then to
/// hardware concurrency.
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, count). With threads > 1, iterations are
/// distributed over a worker pool; the body must only write state disjoint
/// per index. Exceptions propagate (first one wins).
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace septree
