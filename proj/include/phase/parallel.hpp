// Deterministic parallel helpers. Thread count is capped by the
// PHASE_MINMAX_THREADS environment variable; reductions accumulate
// fixed-size chunks in index order so results do not depend on the
// number of worker threads.
#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace phase {

inline int max_threads() {
  if (const char* env = std::getenv("PHASE_MINMAX_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  int nt = max_threads();
  if (nt <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Sum body(i) over i in [0, n). Partial sums are formed over 256-element
// chunks and combined in chunk order: byte-identical for any thread count.
template <class F>
double parallel_sum(std::size_t n, F&& body) {
  constexpr std::size_t kChunk = 256;
  std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
  parallel_for(nchunks, [&](std::size_t c) {
    double acc = 0.0;
    std::size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) acc += body(i);
    partial[c] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace phase
