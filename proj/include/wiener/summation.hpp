#pragma once

// Deterministic reductions.
//
// Every reduction in the library goes through pairwise summation over
// fixed-size chunks. Chunk boundaries depend only on the input length, so the
// result is bit-identical regardless of how many worker threads are used.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace wiener {

namespace detail {

inline std::atomic<unsigned>& worker_thread_setting() {
  static std::atomic<unsigned> threads{0};  // 0 = hardware concurrency
  return threads;
}

}  // namespace detail

/// Number of worker threads used by chunked reductions. 0 selects the
/// hardware concurrency. Never changes results, only speed.
inline void set_worker_threads(unsigned n) { detail::worker_thread_setting() = n; }

inline unsigned worker_threads() {
  unsigned n = detail::worker_thread_setting();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

/// Pairwise (cascade) summation; error grows as O(log n) instead of O(n).
inline double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kBlock = 32;
  if (xs.size() <= kBlock) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline constexpr std::size_t kReductionChunk = std::size_t{1} << 15;

/// Sums term(i) for i in [0, count). Terms are materialized chunk by chunk,
/// each chunk reduced pairwise, and the chunk partials reduced pairwise in
/// index order.
template <class Term>
double chunked_sum(std::size_t count, Term&& term) {
  const std::size_t n_chunks = (count + kReductionChunk - 1) / kReductionChunk;
  std::vector<double> partials(n_chunks, 0.0);

  auto run_chunk = [&](std::size_t c, std::vector<double>& buf) {
    const std::size_t lo = c * kReductionChunk;
    const std::size_t hi = std::min(count, lo + kReductionChunk);
    buf.resize(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) buf[i - lo] = term(i);
    partials[c] = pairwise_sum(buf);
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_threads(), n_chunks));
  if (n_workers <= 1) {
    std::vector<double> buf;
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c, buf);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        std::vector<double> buf;
        for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c, buf);
      });
    }
  }
  return pairwise_sum(partials);
}

}  // namespace wiener
