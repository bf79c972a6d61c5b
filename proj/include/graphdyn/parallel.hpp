#pragma once

#include <atomic>
#include <thread>
#include <utility>
#include <vector>

namespace graphdyn {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Contiguous block split of [0, total) across up to `threads` workers.
/// Per-index work must be independent of the split, so results are identical
/// for any thread count.
template <class Fn>
void parallel_blocks(int total, int threads, Fn&& body) {
  threads = std::min(resolve_threads(threads), total);
  if (threads <= 1 || total <= 1) {
    body(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

/// Dynamic task loop over [0, count): workers pull indices from an atomic
/// cursor. Tasks must write only to their own output slots.
template <class Fn>
void parallel_tasks(int count, int threads, Fn&& body) {
  threads = std::min(resolve_threads(threads), count);
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&cursor, &body, count] {
      for (;;) {
        const int i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace graphdyn
