#ifndef SEQSPACE_RNG_HPP
#define SEQSPACE_RNG_HPP

#include <cstdint>
#include <random>

#include "seqspace/core.hpp"

namespace seqspace {

/// Seeded generator with platform-independent draws (std::random
/// distributions are implementation-defined, so we map the raw engine
/// output ourselves; reports must be byte-identical for a fixed seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  Index uniform_index(Index lo, Index hi) {
    return lo + static_cast<Index>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double sign() { return (eng_() & 1) ? 1.0 : -1.0; }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace seqspace

#endif  // SEQSPACE_RNG_HPP
