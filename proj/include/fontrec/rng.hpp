#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace fontrec {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stable stream addressing: the same (seed, tags) always yields the same
// substream, independent of draw order elsewhere.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a * 0x9e3779b97f4a7c15ull;
  h ^= splitmix64(s);
  s ^= b * 0xc2b2ae3d27d4eb4full;
  h ^= splitmix64(s);
  s ^= c * 0x165667b19e3779f9ull;
  h ^= splitmix64(s);
  return h;
}

// xoshiro256** with explicit uniform/normal draws. std::*_distribution is
// implementation-defined, which would break bit-reproducible runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

  void reseed(std::uint64_t seed) {
    base_seed_ = seed;
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // [0, 1)
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive [lo, hi], rejection-free unbiased (Lemire).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    if (span == 0) return std::int64_t(next_u64());  // full 64-bit range
    std::uint64_t x = next_u64();
    __uint128_t m = __uint128_t(x) * span;
    std::uint64_t l = std::uint64_t(m);
    if (l < span) {
      const std::uint64_t t = (-span) % span;
      while (l < t) {
        x = next_u64();
        m = __uint128_t(x) * span;
        l = std::uint64_t(m);
      }
    }
    return lo + std::int64_t(m >> 64);
  }

  // Box-Muller, no cached spare: every call consumes exactly two uniforms.
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t base_seed() const { return base_seed_; }

  // Child stream addressed by tags relative to the base seed.
  Rng fork(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    return Rng(derive_seed(base_seed_, a, b, c));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t base_seed_ = 0;
};

}  // namespace fontrec
