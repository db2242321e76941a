#pragma once

// Chunked parallel-for over index ranges. Each index writes its own slot, so
// results are deterministic regardless of scheduling. SELFSIM_THREADS caps
// the worker count.

#include <cstdlib>
#include <thread>
#include <vector>

namespace selfsim {

inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SELFSIM_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 64));
  }
  return std::min(hw, 8u);
}

template <class F>
void parallel_for(size_t n, F&& body) {
  unsigned workers = thread_cap();
  if (workers <= 1 || n < 256) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  workers = static_cast<unsigned>(std::min<size_t>(workers, n));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace selfsim
