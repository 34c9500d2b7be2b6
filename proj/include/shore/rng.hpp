#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace shore {

// Deterministic seeded generator: xoshiro256++ seeded through splitmix64.
// The integer stream is reproducible bit-for-bit on every platform; the
// floating-point transforms use fixed formulas on IEEE-754 doubles.
//
// A generator owns its stream. Parallel work never shares an Rng; each
// worker derives an independent one via derive(), which is a pure function
// of the construction seed and the derivation tags (it does not consume
// or depend on the stream position).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_double();

  // Standard normal via the Marsaglia polar method (one spare cached).
  double next_gaussian();

  // Uniform integer in [0, n); rejection sampling, n >= 1.
  std::uint64_t next_below(std::uint64_t n);

  // Independent child stream identified by (a, b, tag).
  Rng derive(std::uint64_t a, std::uint64_t b, std::string_view tag) const;

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace shore
