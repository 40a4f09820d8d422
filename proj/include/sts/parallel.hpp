#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sts {

/// Worker count: min(hardware, STS_THREADS) with STS_THREADS=0 meaning "1".
inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("STS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && (unsigned)v < hw) hw = (unsigned)v;
    if (v == 1 || v == 0) hw = 1;
  }
  return (int)hw;
}

/// Splits [0,n) into contiguous chunks, one per worker. The body receives
/// (begin, end, worker_index); workers share read-only state only, and any
/// per-worker results must be merged by the caller in worker order so runs
/// are deterministic.
inline void parallel_chunks(long long n,
                            const std::function<void(long long, long long, int)>& body) {
  int workers = worker_count();
  if (n <= 0) return;
  if (workers <= 1 || n < 1024) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  long long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long lo = w * chunk;
    long long hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    threads.emplace_back(body, lo, hi, w);
  }
  for (auto& t : threads) t.join();
}

}  // namespace sts
