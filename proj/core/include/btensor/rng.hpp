#pragma once

#include <cstdint>

namespace btensor {

/// splitmix64: fixed 64-bit generator so that seeded artifacts replay
/// bit-identically on every platform. Reference: Steele, Lea, Flood,
/// "Fast splittable pseudorandom number generators".
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

 private:
  std::uint64_t state_;
};

/// Stream-splitting rule: sub-stream k of `master` is seeded with the first
/// output of splitmix64 started at master ^ (k+1)*golden-gamma.
inline std::uint64_t split_stream(std::uint64_t master, std::uint64_t k) {
  return SplitMix64(master ^ (0x9E3779B97F4A7C15ull * (k + 1))).next();
}

}  // namespace btensor
