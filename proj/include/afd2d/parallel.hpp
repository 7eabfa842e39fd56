#pragma once

#include <thread>
#include <vector>

namespace afd2d {

/// Runs body(i) for i in [begin, end) on `threads` workers.
///
/// Work is split into contiguous index blocks and every index is processed
/// by exactly one worker, so results written to disjoint slots are identical
/// to a sequential run regardless of thread count.
template <typename Body>
void parallel_for(int begin, int end, int threads, Body&& body) {
  const int count = end - begin;
  if (count <= 0) return;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || count == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  if (threads > count) threads = count;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace afd2d
