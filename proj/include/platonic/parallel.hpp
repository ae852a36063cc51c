#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace platonic {

/// Evaluate fn(i) for i in [0, n) on up to `threads` workers, results in index
/// order. threads == 0 picks the hardware concurrency. The first exception
/// thrown by any worker is rethrown after all workers join.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn, unsigned threads = 0) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          if (failed) return;
          try {
            out[i] = fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace platonic
