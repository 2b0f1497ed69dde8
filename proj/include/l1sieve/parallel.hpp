#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace l1sieve {

// Calls body(chunk) for every chunk in [0, chunks). Chunks are claimed
// dynamically, so results must be written by chunk index and reduced by the
// caller in index order; that keeps reductions independent of `workers`.
template <typename Body>
void parallel_chunks(std::size_t chunks, unsigned workers, Body&& body) {
  if (chunks == 0) return;
  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), chunks);
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        body(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

// Cascade summation; error grows like O(log n) instead of O(n).
template <typename T>
T pairwise_sum(std::span<const T> values) {
  constexpr std::size_t kLeaf = 128;
  if (values.size() <= kLeaf) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

}  // namespace l1sieve
