#pragma once
// Counter-based uniform generator. A (seed, stream) pair names an independent
// sequence; the i-th draw is a pure function of (seed, stream, i), so shards
// and tiles can be assigned streams and produce identical results regardless
// of scheduling. Output mixing is the SplitMix64 finalizer over an additive
// Weyl sequence.

#include <cstdint>

#include "eon/core.hpp"

namespace eon {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed) + kGamma * (stream + 1))) {}

  // Uniform double in [0, 1), 53 random bits.
  double uniform() {
    const std::uint64_t z = mix(key_ + kGamma * ++counter_);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  RandomPair pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    return RandomPair(u1, u2);
  }

  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace eon
