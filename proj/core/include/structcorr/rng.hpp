#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace structcorr {

// splitmix64 step (Vigna's public-domain mixer). Used both to expand seeds
// into generator state and as the word mixer for stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and up to three stream
// coordinates (e.g. scenario index, purpose tag, replicate index). The rule
// is a fixed splitmix64 absorption chain, so stream m never depends on how
// many streams exist in total:
//   h = seed; for each word w: h = splitmix64(h ^ w)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0x5555555555555555ULL,
                              std::uint64_t c = 0xAAAAAAAAAAAAAAAAULL) {
  std::uint64_t h = seed;
  h = splitmix64(h ^= a);
  h = splitmix64(h ^= b);
  h = splitmix64(h ^= c);
  return h;
}

// Purpose tags separating the random streams drawn per replicate.
namespace stream {
inline constexpr std::uint64_t design = 0xD351ULL;
inline constexpr std::uint64_t beta = 0xBE7AULL;
inline constexpr std::uint64_t noise = 0x0153ULL;
}  // namespace stream

// xoshiro256++ with splitmix64 seeding, plus the handful of distributions the
// simulators need. Self-contained on purpose: std::normal_distribution's
// algorithm is implementation-defined, and the simulation harness promises
// bit-identical output for a given seed regardless of thread count.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(angle);
    has_cached_ = true;
    return r * std::cos(angle);
  }

  // Uniform integer in [lo, hi] via rejection (unbiased).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1ULL;
    const std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= reject_above);
    return lo + static_cast<std::int64_t>(draw % span);
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace structcorr
