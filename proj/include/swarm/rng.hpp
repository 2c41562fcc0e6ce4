#pragma once

#include <cstdint>
#include <random>

namespace swarm {

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

/// Seed of replicate `index` under `master`. Defined as
///   mix64(master + 0x9e3779b97f4a7c15 * (index + 1))
/// which is the (index+1)-th output of a SplitMix64 stream started at
/// `master`, so child seeds are reproducible on every platform.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

/// Random source for the simulators. The engine is std::mt19937_64 (fully
/// specified by the standard); conversion to doubles is done here rather than
/// through <random> distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential holding time with the given total rate (> 0).
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarm
