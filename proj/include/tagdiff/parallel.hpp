#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tagdiff {

/// 0 means one worker per hardware thread.
inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i, worker) for every i in [0, count) on up to `workers`
/// threads; `worker` is in [0, worker_count(count, workers)) and identifies
/// the calling thread, for per-thread scratch space. Each index is visited
/// exactly once; callers write results into per-index slots so output never
/// depends on scheduling. The first exception is rethrown.
inline unsigned worker_count(std::size_t count, unsigned workers) {
  return static_cast<unsigned>(std::max<std::size_t>(
      1, std::min<std::size_t>(resolve_workers(workers), count)));
}

template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = worker_count(count, workers);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](unsigned worker) {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i, worker);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0u);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace tagdiff
