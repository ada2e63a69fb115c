#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace ccnlab {

/// Deterministic 64-bit generator (splitmix64). The standard <random>
/// distributions are not bit-reproducible across library implementations,
/// so every draw the project needs is derived here from raw u64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Exponential inter-arrival time for a Poisson process of the given rate.
  double exponential(double rate) { return -std::log1p(-next_double()) / rate; }

 private:
  std::uint64_t state_;
};

/// Derives an independent child seed from (seed, stream tag, index), so that
/// per-consumer / per-attacker / per-chunk streams never overlap and a batch
/// runner can deal out work in any order with identical results.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = 0xCBF29CE484222325ull ^ seed;
  for (char c : tag) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ull;
  }
  h ^= index + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  Rng mix(h);
  return mix.next_u64();
}

}  // namespace ccnlab
