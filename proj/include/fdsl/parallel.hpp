#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fdsl {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Tasks are
/// claimed dynamically; the first exception stops further claims and is
/// rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (count == 0) return;
  const unsigned n = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, count));
  if (n == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(n - 1);
    for (unsigned t = 1; t < n; ++t) threads.emplace_back(body);
    body();
  }
  if (error) std::rethrow_exception(error);
}

inline unsigned default_worker_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace fdsl
