#pragma once

// Deterministic sampling and accumulation machinery.
//
// Monte Carlo draws are keyed by (seed, sample index) so every sample has its
// own stream; sums are accumulated over fixed-size chunks whose partials are
// combined in chunk order. Results are therefore bit-identical no matter how
// many threads run or which thread computes which chunk.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace qclone {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based per-sample stream.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t sample_index)
      : state_(seed ^ (0xD6E8FEB86659FD93ull * (sample_index + 0x632BE59BD9B4E019ull))) {
    splitmix64_next(state_);  // decorrelate neighboring indices
  }
  explicit SampleRng(std::uint64_t seed) : SampleRng(seed, 0) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

namespace detail {

inline constexpr std::uint64_t kChunkItems = 1ull << 14;

inline unsigned resolve_threads(unsigned requested, std::uint64_t n_chunks) {
  unsigned t = requested != 0 ? requested : std::thread::hardware_concurrency();
  if (t == 0) t = 1;
  if (static_cast<std::uint64_t>(t) > n_chunks) t = static_cast<unsigned>(n_chunks);
  return t > 0 ? t : 1;
}

// Applies `item(i) -> double` for i in [0, n) and returns (sum, sum of
// squares), chunk partials combined in index order.
template <class ItemFn>
std::pair<double, double> chunked_sums(std::uint64_t n, unsigned threads, ItemFn&& item) {
  if (n == 0) return {0.0, 0.0};
  const std::uint64_t n_chunks = (n + kChunkItems - 1) / kChunkItems;
  std::vector<double> part_sum(n_chunks, 0.0), part_sq(n_chunks, 0.0);

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkItems;
    const std::uint64_t end = std::min(n, begin + kChunkItems);
    double s = 0.0, q = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double v = item(i);
      s += v;
      q += v * v;
    }
    part_sum[c] = s;
    part_sq[c] = q;
  };

  const unsigned t = resolve_threads(threads, n_chunks);
  if (t <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k)
      pool.emplace_back([&] {
        for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
          run_chunk(c);
      });
    for (std::thread& th : pool) th.join();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    sum += part_sum[c];
    sum_sq += part_sq[c];
  }
  return {sum, sum_sq};
}

struct MeanErr {
  double mean = 0.0;
  double std_error = 0.0;
};

template <class ItemFn>
MeanErr chunked_mean(std::uint64_t n, unsigned threads, ItemFn&& item) {
  const auto [sum, sum_sq] = chunked_sums(n, threads, std::forward<ItemFn>(item));
  MeanErr r;
  r.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * r.mean) / static_cast<double>(n - 1));
    r.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return r;
}

template <class ItemFn>
double chunked_sum(std::uint64_t n, unsigned threads, ItemFn&& item) {
  return chunked_sums(n, threads, std::forward<ItemFn>(item)).first;
}

}  // namespace detail
}  // namespace qclone
