#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace surfcensus {

/// Worker count to use: `requested`, or the hardware concurrency when zero.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(begin, end) over consecutive chunks of [0, n) on `threads` workers
/// and returns the chunk results combined in chunk order.
template <typename Result, typename Fn, typename Combine>
Result parallel_reduce(std::uint64_t n, unsigned threads, Result init, Fn fn, Combine combine) {
  threads = resolve_threads(threads);
  if (n == 0) return init;
  const std::uint64_t chunks = std::min<std::uint64_t>(n, std::uint64_t{threads} * 16);
  const std::uint64_t step = (n + chunks - 1) / chunks;
  const std::uint64_t count = (n + step - 1) / step;
  std::vector<Result> partial(count, init);

  if (threads == 1 || count == 1) {
    for (std::uint64_t c = 0; c < count; ++c) partial[c] = fn(c * step, std::min(n, (c + 1) * step));
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (std::uint64_t c = next++; c < count; c = next++) {
        try {
          partial[c] = fn(c * step, std::min(n, (c + 1) * step));
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::uint64_t>(threads, count); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  Result acc = init;
  for (auto& r : partial) acc = combine(std::move(acc), std::move(r));
  return acc;
}

template <typename Fn>
std::uint64_t parallel_sum(std::uint64_t n, unsigned threads, Fn fn) {
  return parallel_reduce<std::uint64_t>(n, threads, 0, fn, [](std::uint64_t a, std::uint64_t b) { return a + b; });
}

}  // namespace surfcensus
