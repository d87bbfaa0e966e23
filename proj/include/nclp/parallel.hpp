#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nclp {

/// Maximum number of worker threads. Capped by the NCLP_THREADS environment
/// variable when set; defaults to the hardware concurrency.
inline int thread_cap() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("NCLP_THREADS")) {
    int requested = std::atoi(env);
    if (requested >= 1 && requested < cap) cap = requested;
  }
  return cap;
}

/// Runs f(0), ..., f(n-1) across up to thread_cap() threads. Each index is
/// processed exactly once; f must not share mutable state between indices.
/// Results are deterministic regardless of the scheduling order.
template <typename F>
void parallel_for(int n, F&& f) {
  if (n <= 0) return;
  int workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace nclp
