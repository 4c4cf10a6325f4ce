#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "secnet/core.hpp"
#include "secnet/rng.hpp"

using namespace secnet;

TEST_CASE("thresholds from rates") {
  const auto [tt, te] = thresholds_from_rates(3.0, 1.0);
  CHECK(tt == 7.0);
  CHECK(te == 1.0);

  const auto zero = thresholds_from_rates(0.0, 0.0);
  CHECK(zero.theta_t == 0.0);
  CHECK(zero.theta_e == 0.0);

  const auto frac = thresholds_from_rates(1.5, 0.5);
  // 2^1.5 - 1 = 2 sqrt(2) - 1, 2^0.5 - 1 = sqrt(2) - 1
  CHECK(frac.theta_t ==
        doctest::Approx(2.0 * std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(frac.theta_e == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));

  CHECK_THROWS_AS(thresholds_from_rates(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(thresholds_from_rates(0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(thresholds_from_rates(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("thresholds are strictly increasing in the rate") {
  double prev = -1.0;
  for (double r = 0.0; r <= 8.0; r += 0.25) {
    const auto th = thresholds_from_rates(r, 0.0);
    CHECK(th.theta_t > prev);
    prev = th.theta_t;
  }
  CHECK(thresholds_from_rates(0.0, 0.0).theta_t == 0.0);
}

TEST_CASE("split halves every rate and keeps the sum identity") {
  const RateConfig base = RateConfig::from_rates(3.0, 1.0);
  const RateConfig primed = split_rates(base);
  CHECK(primed.R_t == 1.5);
  CHECK(primed.R_s == 1.0);
  CHECK(primed.R_e == 0.5);
  CHECK(primed.theta_t == doctest::Approx(1.8284271247461901).epsilon(1e-15));
  CHECK(primed.theta_e == doctest::Approx(0.4142135623730950).epsilon(1e-15));

  const RateConfig zero = split_rates(RateConfig::from_rates(0.0, 0.0));
  CHECK(zero.R_t == 0.0);
  CHECK(zero.theta_t == 0.0);
  CHECK(zero.theta_e == 0.0);
}

TEST_CASE("split property over random rate configs") {
  Rng rng(12345);
  for (int i = 0; i < 1000; ++i) {
    const double re = rng.uniform(0.0, 4.0);
    const double rt = re + rng.uniform(0.0, 4.0);
    const RateConfig base = RateConfig::from_rates(rt, re);
    const RateConfig primed = split_rates(base);
    CHECK(primed.R_t == base.R_t / 2.0);
    CHECK(primed.R_s == base.R_s / 2.0);
    CHECK(primed.R_e == base.R_e / 2.0);
    CHECK(primed.R_t == doctest::Approx(primed.R_s + primed.R_e).epsilon(1e-12));
    CHECK(primed.theta_t >= primed.theta_e);
  }
}

TEST_CASE("system parameter validation") {
  SystemParams ok;
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.delta() == 0.5);
  CHECK(ok.delta() > 0.0);
  CHECK(ok.delta() < 1.0);

  SystemParams bad = ok;
  bad.alpha = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.p = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.p = 1.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.xi = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.r0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.lambda_l = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.tx_power = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // delta stays inside (0, 1) for any accepted alpha
  for (double a : {2.01, 3.0, 4.0, 6.0, 50.0}) {
    SystemParams sp = ok;
    sp.alpha = a;
    CHECK_NOTHROW(sp.validate());
    CHECK(sp.delta() > 0.0);
    CHECK(sp.delta() < 1.0);
  }
}
