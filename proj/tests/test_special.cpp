#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "secnet/special.hpp"

using secnet::interference_constant;
using secnet::lambert_w0;

namespace {

// Independent oracle: bisection on w e^w = z over the principal branch.
double lambert_bisect(double z) {
  double lo = -1.0, hi = 1.0;
  while (hi * std::exp(hi) < z) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(mid) < z ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> residual_grid(int n) {
  // log-spaced in distance from the branch point, covering
  // [-1/e + 1e-9, 1e6]
  std::vector<double> grid;
  const double bp = -std::exp(-1.0);
  const double lo = 1e-9, hi = 1e6 - bp;
  for (int i = 0; i < n; ++i) {
    const double t =
        lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    grid.push_back(bp + t);
  }
  return grid;
}

}  // namespace

TEST_CASE("interference constant matches the gamma-product form") {
  // reflection value pi/2 at delta = 1/2
  CHECK(interference_constant(0.5) ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
  CHECK(interference_constant(2.0 / 3.0) ==
        doctest::Approx(2.4183991523122905).epsilon(1e-14));
  // near-zero limit of Gamma(1+d)Gamma(1-d) is 1
  CHECK(interference_constant(1e-12) == doctest::Approx(1.0).epsilon(1e-10));
  for (int i = 1; i <= 19; ++i) {
    const double d = 0.05 * i;
    const double gamma_product = std::tgamma(1.0 + d) * std::tgamma(1.0 - d);
    CHECK(interference_constant(d) ==
          doctest::Approx(gamma_product).epsilon(1e-13));
  }
  CHECK(interference_constant(0.4) > 1.0);
  CHECK_THROWS_AS(interference_constant(0.0), std::domain_error);
  CHECK_THROWS_AS(interference_constant(1.0), std::domain_error);
  CHECK_THROWS_AS(interference_constant(-0.2), std::domain_error);
}

TEST_CASE("lambert w0 exact anchors") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(std::fabs(lambert_w0(-std::exp(-1.0)) + 1.0) <= 1e-12);
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097839).epsilon(1e-13));
  CHECK(lambert_w0(1.0) == doctest::Approx(lambert_bisect(1.0)).epsilon(1e-12));
  // w e^w with w = 2 must invert back
  CHECK(lambert_w0(2.0 * std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS(lambert_w0(-0.4), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), std::domain_error);
}

TEST_CASE("lambert w0 round-trip residual over the full domain") {
  for (double z : residual_grid(1000)) {
    const double w = lambert_w0(z);
    CHECK(w >= -1.0);
    const double resid = std::fabs(w * std::exp(w) - z);
    CHECK(resid <= 1e-12 * std::fmax(1.0, std::fabs(z)));
  }
}

TEST_CASE("lambert w0 is strictly increasing") {
  const auto grid = residual_grid(1000);
  double prev = lambert_w0(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = lambert_w0(grid[i]);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("lambert w0 agrees with the small-argument expansion") {
  for (double x : {-0.01, -0.007, -0.003, -1e-4, 1e-4, 0.003, 0.007, 0.01}) {
    const double series =
        x - x * x + 1.5 * x * x * x - (8.0 / 3.0) * x * x * x * x;
    CHECK(std::fabs(lambert_w0(x) - series) <= 10.0 * std::pow(std::fabs(x), 5));
  }
}

TEST_CASE("lambert w0 near the branch point") {
  const double bp = -std::exp(-1.0);
  for (double off : {1e-9, 1e-7, 1e-5, 1e-3, 1e-2, 0.05}) {
    const double z = bp + off;
    const double w = lambert_w0(z);
    CHECK(w >= -1.0);
    CHECK(std::fabs(w * std::exp(w) - z) <= 1e-12);
    CHECK(w == doctest::Approx(lambert_bisect(z)).epsilon(1e-6));
  }
}
