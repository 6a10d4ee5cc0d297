#pragma once

#include <cstdint>
#include <random>

namespace fdsl {

/// Random number scheme "fdsl-rng v1".
///
/// Streams are std::mt19937_64 engines (output sequence fixed by the C++
/// standard) seeded with a single 64-bit value. Child seeds come from
/// `mix(parent, index)`, built from the SplitMix64 finalizer. Conversions to
/// reals and bounded integers are defined here rather than through
/// <random> distributions, whose outputs differ between standard libraries.
inline constexpr const char* kRngScheme = "fdsl-rng v1";

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives the seed of child stream `index` from `parent`.
constexpr std::uint64_t mix(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(parent ^ splitmix64(index ^ 0x6a09e667f3bcc909ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fdsl
