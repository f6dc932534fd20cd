#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shafstats {

// Runs fn(begin, end) over fixed-size blocks of [0, n) on up to `threads`
// workers. Block boundaries depend only on n and block, never on the worker
// count, so callers that write per-block results into preallocated slots get
// the same output for every thread count. The first exception thrown by any
// block is rethrown on the calling thread.
template <class Fn>
void parallel_blocks(std::size_t n, std::size_t block, unsigned threads, Fn&& fn) {
  if (n == 0) return;
  block = std::max<std::size_t>(block, 1);
  const std::size_t blocks = (n + block - 1) / block;
  const auto workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1U), blocks));

  if (workers == 1) {
    for (std::size_t i = 0; i < blocks; ++i) fn(i * block, std::min(n, (i + 1) * block));
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= blocks) return;
      try {
        fn(i * block, std::min(n, (i + 1) * block));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
  }
  if (failure) std::rethrow_exception(failure);
}

inline std::size_t block_count(std::size_t n, std::size_t block) {
  return n == 0 ? 0 : (n + block - 1) / block;
}

}  // namespace shafstats
