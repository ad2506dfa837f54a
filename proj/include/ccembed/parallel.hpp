#pragma once

#include <functional>

namespace ccembed {

// Worker count for opt-in parallel loops. Defaults to 1; the CCEMBED_THREADS
// environment variable overrides the default at first use.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [begin, end) across thread_count() workers using a
// fixed block partition. Bodies must write disjoint outputs; results may not
// depend on the partition, so numeric output is identical for any count.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace ccembed
