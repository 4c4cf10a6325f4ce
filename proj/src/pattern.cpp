#include "secnet/pattern.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "secnet/rng.hpp"

namespace secnet {

namespace {

double wrap_delta(double d, double side) {
  d = std::fmod(d, side);
  if (d < -0.5 * side) d += side;
  if (d >= 0.5 * side) d -= side;
  return d;
}

double wrap_coord(double c, double side) {
  c = std::fmod(c, side);
  if (c < 0.0) c += side;
  return c;
}

Vec2 uniform_point(Rng& rng, double side) {
  return {rng.uniform(0.0, side), rng.uniform(0.0, side)};
}

Vec2 paired_receiver(const Vec2& tx, double r0, double side, Rng& rng) {
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return {wrap_coord(tx.x + r0 * std::cos(phi), side),
          wrap_coord(tx.y + r0 * std::sin(phi), side)};
}

}  // namespace

double torus_distance(const Vec2& a, const Vec2& b, double side) {
  const double dx = wrap_delta(a.x - b.x, side);
  const double dy = wrap_delta(a.y - b.y, side);
  return std::hypot(dx, dy);
}

PointPattern sample_network(const SystemParams& params, double torus_side,
                            std::uint64_t seed) {
  params.validate();
  if (!(torus_side >= 20.0 * params.r0))
    throw std::invalid_argument("torus_side must be at least 20 * r0");

  Rng rng(seed);
  PointPattern pat;
  pat.torus_side = torus_side;
  pat.typical_rx = {params.r0, 0.0};

  const double area = torus_side * torus_side;
  const long n_itf = rng.poisson(params.lambda_l * area);
  pat.interferers.reserve(n_itf);
  pat.interferer_rx.reserve(n_itf);
  for (long i = 0; i < n_itf; ++i) {
    const Vec2 tx = uniform_point(rng, torus_side);
    pat.interferers.push_back(tx);
    pat.interferer_rx.push_back(paired_receiver(tx, params.r0, torus_side, rng));
  }
  const long n_eav = rng.poisson(params.lambda_e * area);
  pat.eavesdroppers.reserve(n_eav);
  for (long i = 0; i < n_eav; ++i)
    pat.eavesdroppers.push_back(uniform_point(rng, torus_side));
  return pat;
}

PointPattern sample_fixed_counts(long n_interferers, long n_eavesdroppers,
                                 double r0, double torus_side,
                                 std::uint64_t seed) {
  if (!(torus_side >= 20.0 * r0))
    throw std::invalid_argument("torus_side must be at least 20 * r0");
  Rng rng(seed);
  PointPattern pat;
  pat.torus_side = torus_side;
  pat.typical_rx = {r0, 0.0};
  for (long i = 0; i < n_interferers; ++i) {
    const Vec2 tx = uniform_point(rng, torus_side);
    pat.interferers.push_back(tx);
    pat.interferer_rx.push_back(paired_receiver(tx, r0, torus_side, rng));
  }
  for (long i = 0; i < n_eavesdroppers; ++i)
    pat.eavesdroppers.push_back(uniform_point(rng, torus_side));
  return pat;
}

PointPattern restrict_to_half(const PointPattern& pattern) {
  const double big = pattern.torus_side;
  const double half = 0.5 * big;
  PointPattern out;
  out.torus_side = half;
  out.typical_rx = pattern.typical_rx;

  auto in_window = [&](const Vec2& q) {
    // window of side big/2 centered on the origin, in wrapped coordinates
    const double dx = wrap_delta(q.x, big);
    const double dy = wrap_delta(q.y, big);
    return dx >= -0.5 * half && dx < 0.5 * half && dy >= -0.5 * half &&
           dy < 0.5 * half;
  };
  auto remap = [&](const Vec2& q) {
    return Vec2{wrap_coord(wrap_delta(q.x, big), half),
                wrap_coord(wrap_delta(q.y, big), half)};
  };

  for (std::size_t i = 0; i < pattern.interferers.size(); ++i) {
    if (in_window(pattern.interferers[i])) {
      out.interferers.push_back(remap(pattern.interferers[i]));
      out.interferer_rx.push_back(remap(pattern.interferer_rx[i]));
    }
  }
  for (const Vec2& e : pattern.eavesdroppers)
    if (in_window(e)) out.eavesdroppers.push_back(remap(e));
  return out;
}

}  // namespace secnet
