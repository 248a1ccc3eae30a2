#pragma once
// Deterministic parallel-for. The item range is split into a fixed chunk
// grid that does not depend on the worker count, workers claim chunk
// indices from a shared counter, and callers write results into
// chunk-indexed slots merged in index order afterwards. Results are
// therefore identical for any SPECLAB_WORKERS setting, including 1.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace speclab {

inline int worker_count() {
  if (const char* env = std::getenv("SPECLAB_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// fn(chunk_index, begin, end) over [0, n) split into n_chunks pieces.
inline void parallel_chunks(std::size_t n, std::size_t n_chunks,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (n_chunks == 0) n_chunks = 1;
  if (n_chunks > n) n_chunks = n;
  const std::size_t per = (n + n_chunks - 1) / n_chunks;
  int workers = worker_count();
  if (workers <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      std::size_t b = c * per, e = std::min(n, b + per);
      if (b < e) fn(c, b, e);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      std::size_t b = c * per, e = std::min(n, b + per);
      if (b < e) fn(c, b, e);
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min<std::size_t>(workers, n_chunks);
  pool.reserve(nt);
  for (int i = 0; i < nt - 1; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace speclab
