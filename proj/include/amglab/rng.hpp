#pragma once

#include <cstdint>

namespace amglab {

/// Counter-based splittable generator. Every draw mixes (seed, counter)
/// through the splitmix64 finalizer, so streams can be forked without
/// sharing state and a given (seed, counter) pair always yields the same
/// value regardless of call history elsewhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [lo, hi] inclusive.
  long long uniform_int(long long lo, long long hi);

  /// Independent child stream; deterministic in (seed, tag).
  Rng split(std::uint64_t tag) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace amglab
