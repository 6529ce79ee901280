#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace locpriv {

// Resolve a worker count: explicit request > LOCPRIV_THREADS env > hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LOCPRIV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Run fn(begin, end, chunk_index) over [0, n) split into contiguous chunks.
// Results must be written into per-chunk slots; the reduction performed by
// the caller must be order-independent (we only ever sum integer counts).
template <class Fn>
void parallel_chunks(long n, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 2 * threads) {
    fn(0L, n, 0);
    return;
  }
  const long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    const long b = w * chunk;
    const long e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e, w] { fn(b, e, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace locpriv
