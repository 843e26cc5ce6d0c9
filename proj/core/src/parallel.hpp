#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace setdyn::detail {

inline int worker_count() {
  if (const char* env = std::getenv("SETDYN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end, worker) over [0, n) split into contiguous chunks, one
// per worker. Results must not depend on the partition; merging is the
// caller's job and must be order-independent.
template <class Fn>
void parallel_chunks(size_t n, size_t min_grain, Fn&& fn) {
  const int max_workers = worker_count();
  const size_t by_grain = min_grain == 0 ? n : (n + min_grain - 1) / min_grain;
  const int workers = static_cast<int>(std::max<size_t>(
      1, std::min<size_t>(static_cast<size_t>(max_workers), by_grain)));
  if (workers == 1 || n == 0) {
    fn(size_t{0}, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const size_t b = std::min(n, static_cast<size_t>(w) * chunk);
    const size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e, w] { fn(b, e, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace setdyn::detail
