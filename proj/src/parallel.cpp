#include "ccembed/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ccembed {

namespace {

int initial_thread_count() {
  if (const char* env = std::getenv("CCEMBED_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::atomic<int>& count_slot() {
  static std::atomic<int> count{initial_thread_count()};
  return count;
}

}  // namespace

void set_thread_count(int n) { count_slot().store(std::max(1, n)); }

int thread_count() { return count_slot().load(); }

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  // contiguous blocks; remainder spread over the leading workers
  const int base = n / workers;
  const int extra = n % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int start = begin;
  for (int w = 0; w < workers; ++w) {
    const int len = base + (w < extra ? 1 : 0);
    const int lo = start;
    const int hi = start + len;
    start = hi;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ccembed
