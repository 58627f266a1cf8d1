#pragma once

// Deterministic randomness for the samplers. Every run of a sampling
// procedure draws from its own engine, derived from (seed, run index) alone,
// so results are reproducible and independent of how runs are scheduled
// across threads.

#include <cstdint>
#include <random>

#include "probtree/numeric.hpp"

namespace probtree {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed)
      : seed_(seed), engine_(splitmix64(seed)) {}

  // Engine for one independent run: seeded with splitmix64(seed + run).
  static RandomSource for_run(std::uint64_t seed, std::uint64_t run) {
    return RandomSource(seed + run);
  }

  std::uint64_t seed() const { return seed_; }

  // Uniform double in [0, 1), 53 bits of precision, identical on every
  // platform with IEEE doubles.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace probtree
