#pragma once

#include <cstdint>
#include <vector>

#include "secnet/core.hpp"

namespace secnet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// One sampled network realization on a square torus of side `torus_side`.
// The frame origin is the typical transmitter; every stored position lives
// in [0, side)^2 and all distances wrap around.
struct PointPattern {
  double torus_side = 0.0;
  Vec2 typical_rx{};                // at distance r0 from the origin
  std::vector<Vec2> interferers;    // other legitimate transmitters
  std::vector<Vec2> interferer_rx;  // their paired receivers (bipolar model)
  std::vector<Vec2> eavesdroppers;
};

// Shortest wrap-around distance on the torus.
double torus_distance(const Vec2& a, const Vec2& b, double side);

// Poisson(lambda * side^2)-many interferers and eavesdroppers placed
// uniformly, plus the deterministic typical pair at the origin / (r0, 0).
// Each interferer gets a receiver at distance r0 in a uniform direction.
// Throws std::invalid_argument when torus_side < 20 * r0 (interference
// truncation bias becomes unacceptable below that).
PointPattern sample_network(const SystemParams& params, double torus_side,
                            std::uint64_t seed);

// Binomial variant with fixed counts, same geometry conventions.
PointPattern sample_fixed_counts(long n_interferers, long n_eavesdroppers,
                                 double r0, double torus_side,
                                 std::uint64_t seed);

// The central (side/2)-window of `pattern`, reinterpreted as a torus of half
// the side. Restriction of a homogeneous Poisson process to a subwindow is
// again Poisson, so the result is an exact half-size sample that shares the
// parent's near-field points (used for the torus-doubling bias check).
PointPattern restrict_to_half(const PointPattern& pattern);

}  // namespace secnet
