#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace secnet {

// Deterministic RNG used everywhere. mt19937_64 has a fully specified
// sequence, and the variate transforms below avoid the
// implementation-defined std::*_distribution adaptors, so identical seeds
// reproduce bit-identical runs on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // uniform on [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool chance(double p) { return uniform01() < p; }

  // unit-mean exponential (Rayleigh power fading coefficient)
  double exponential() { return -std::log1p(-uniform01()); }

  long poisson(double mean);

 private:
  std::mt19937_64 eng_;
};

// Stable hash of (master, stream, substream) into an independent seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t substream = 0);

}  // namespace secnet
