#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

namespace reso {

/// Global worker cap, settable from the CLI (--threads). 0 means "use
/// hardware concurrency".
inline std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{0};
  return cap;
}

inline unsigned worker_count() {
  unsigned cap = thread_cap().load();
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return cap == 0 ? hw : std::min(cap, hw);
}

/// Runs fn(begin, end) over a partition of [0, n). Chunk boundaries depend
/// only on n, so any per-chunk results are reproducible for every worker
/// count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n < 2048) {
    fn(std::size_t{0}, n);
    return;
  }
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

namespace detail {
template <typename T, typename Fn>
T pairwise_sum_impl(std::size_t begin, std::size_t end, const Fn& term) {
  std::size_t n = end - begin;
  if (n <= 32) {
    T acc{};
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  std::size_t mid = begin + n / 2;
  return pairwise_sum_impl<T>(begin, mid, term) + pairwise_sum_impl<T>(mid, end, term);
}
}  // namespace detail

/// Pairwise (cascade) summation of term(0..n-1). The reduction tree is a
/// function of n alone, so results do not depend on threading.
template <typename T, typename Fn>
T pairwise_sum(std::size_t n, Fn&& term) {
  if (n == 0) return T{};
  constexpr std::size_t kChunk = 4096;
  if (n <= kChunk) return detail::pairwise_sum_impl<T>(0, n, term);
  std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<T> partial(chunks, T{});
  parallel_for(chunks, [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      std::size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
      partial[c] = detail::pairwise_sum_impl<T>(lo, hi, term);
    }
  });
  return detail::pairwise_sum_impl<T>(0, chunks, [&](std::size_t c) { return partial[c]; });
}

}  // namespace reso
