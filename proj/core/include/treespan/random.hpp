#pragma once

#include <cstdint>

namespace treespan {

/// Counter-based generator: the i-th draw of stream `seed` is a pure function
/// of (seed, i), so draws can be split across workers and replayed exactly.
/// The mixing function is SplitMix64.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(mix(seed ^ (stream * 0xD1B54A32D192ED03ULL))) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Draw at an explicit counter position; does not advance the stream.
  constexpr std::uint64_t at(std::uint64_t counter) const {
    return mix(seed_ + counter * 0x9E3779B97F4A7C15ULL);
  }

  constexpr std::uint64_t next() { return at(counter_++); }

  /// Uniform integer in [0, bound). Multiply-shift reduction; bias is below
  /// bound / 2^64.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  constexpr std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace treespan
