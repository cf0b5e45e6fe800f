#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

namespace gaussdil {

// Philox4x32-10 counter-based generator. A 128-bit counter plus a 64-bit key
// map to four 32-bit words; any (key, counter) pair can be evaluated
// independently, which is what makes sample-indexed parallel draws exact.
namespace philox {

constexpr std::uint32_t kW32A = 0x9E3779B9u;
constexpr std::uint32_t kW32B = 0xBB67AE85u;
constexpr std::uint32_t kM4x32A = 0xD2511F53u;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b)) >> 32);
}

inline std::array<std::uint32_t, 4> block(std::uint64_t key,
                                          std::array<std::uint32_t, 4> ctr) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    const std::uint32_t lo0 = kM4x32A * ctr[0];
    const std::uint32_t hi0 = mulhi(kM4x32A, ctr[0]);
    const std::uint32_t lo1 = kM4x32B * ctr[2];
    const std::uint32_t hi1 = mulhi(kM4x32B, ctr[2]);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += kW32A;
    k1 += kW32B;
  }
  return ctr;
}

}  // namespace philox

// Each consumer of randomness gets its own stream word so that engines fed
// the same seed never overlap counters.
enum class RngStream : std::uint32_t {
  gaussian_mc = 1,
  sphere_mc = 2,
  smallball_median = 3,
  smallball_draw = 4,
  moment_draw = 5,
};

// Turn two 32-bit words into a uniform double strictly inside (0,1).
inline double uniform_open(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Fills `out` with iid N(0,1) draws for logical sample `index` of `stream`.
// One Philox block yields a Box-Muller pair; for odd lengths the second
// member of the last pair is discarded. `attempt` lets rejection loops ask
// for a fresh, still-reproducible batch at the same index.
inline void standard_normals(std::uint64_t seed, RngStream stream,
                             std::uint64_t index, std::uint32_t attempt,
                             std::span<double> out) {
  const std::uint64_t pairs = (out.size() + 1) / 2;
  for (std::uint64_t j = 0; j < pairs; ++j) {
    const std::uint64_t block_index = index * pairs + j;
    const std::array<std::uint32_t, 4> r = philox::block(
        seed, {static_cast<std::uint32_t>(block_index),
               static_cast<std::uint32_t>(block_index >> 32),
               static_cast<std::uint32_t>(stream), attempt});
    const double u1 = uniform_open(r[0], r[1]);
    const double u2 = uniform_open(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[2 * j] = radius * std::cos(angle);
    if (2 * j + 1 < out.size()) out[2 * j + 1] = radius * std::sin(angle);
  }
}

struct McAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Evaluates value_of(i) for i in [0, samples) and accumulates sum and sum of
// squares. Work is cut into fixed 16384-sample chunks; each chunk reduces in
// index order and chunk partials combine in chunk order, so the result is
// bit-identical for any thread count. value_of must be a pure function of i.
template <class F>
McAccum mc_reduce(std::uint64_t samples, int threads, F&& value_of) {
  constexpr std::uint64_t kChunk = 16384;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<McAccum> partial(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    McAccum acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double v = value_of(i);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    partial[c] = acc;
  };

  if (threads <= 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        run_chunk(c);
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), chunks));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  McAccum total;
  for (const McAccum& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  return total;
}

}  // namespace gaussdil
