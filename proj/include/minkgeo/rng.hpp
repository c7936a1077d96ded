#pragma once

#include <cstdint>

namespace minkgeo {

/// Counter-based random number source. Every draw is addressed by
/// (trial, slot) rather than by generator state, so batches of trials can be
/// evaluated in any order or split across workers and still produce the same
/// values. Keyed by a 64-bit seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Raw 64 bits for draw `slot` of trial `trial`. Slots below 2^16 per
  /// trial keep the counter space collision-free for any realistic count.
  std::uint64_t bits(std::uint64_t trial, std::uint64_t slot) const {
    return mix(seed_, (trial << 16) ^ slot);
  }

  /// Uniform double in [0, 1).
  double uniform01(std::uint64_t trial, std::uint64_t slot) const {
    return static_cast<double>(bits(trial, slot) >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(std::uint64_t trial, std::uint64_t slot, double lo, double hi) const {
    return lo + (hi - lo) * uniform01(trial, slot);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t trial, std::uint64_t slot, std::uint64_t n) const {
    return bits(trial, slot) % n;
  }

 private:
  // SplitMix64 finalizer over a seed-offset counter.
  static std::uint64_t mix(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t z = counter + key * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace minkgeo
