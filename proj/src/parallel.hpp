#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace assouad::detail {

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(task, worker) for task in [0, count) on up to `workers` threads.
/// Tasks are split into contiguous blocks; callers write results by task index,
/// so the outcome does not depend on the worker count.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  const std::size_t threads = std::min<std::size_t>(resolve_workers(workers), count);
  if (threads <= 1) {
    for (std::size_t t = 0; t < count; ++t) body(t, 0u);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    const std::size_t begin = count * w / threads;
    const std::size_t end = count * (w + 1) / threads;
    pool.emplace_back([&, begin, end, w] {
      try {
        for (std::size_t t = begin; t < end; ++t) body(t, static_cast<unsigned>(w));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace assouad::detail
