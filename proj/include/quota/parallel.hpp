#pragma once
// Deterministic task parallelism: workers pull indices from a counter and
// write results into preallocated slots, so output is identical for any
// worker count. QUOTA_BETTI_THREADS caps the pool.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace quota {

inline int thread_cap() {
  if (const char* env = std::getenv("QUOTA_BETTI_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

template <class Fn>
void parallel_for_index(long long count, Fn&& fn) {
  const int workers = static_cast<int>(std::min<long long>(thread_cap(), count));
  if (workers <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (long long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          if (failed.load(std::memory_order_relaxed)) return;
          fn(i);
        }
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace quota
