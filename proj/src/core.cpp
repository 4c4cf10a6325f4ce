#include "secnet/core.hpp"

#include <cmath>
#include <stdexcept>

namespace secnet {

void SystemParams::validate() const {
  if (!(lambda_l >= 0.0) || !std::isfinite(lambda_l))
    throw std::invalid_argument("lambda_l must be >= 0");
  if (!(lambda_e >= 0.0) || !std::isfinite(lambda_e))
    throw std::invalid_argument("lambda_e must be >= 0");
  if (!(r0 > 0.0) || !std::isfinite(r0))
    throw std::invalid_argument("r0 must be > 0");
  // alpha = 2 makes delta = 2/alpha hit 1, where every (1-p)^(delta-1) and
  // theta^delta C(delta) expression degenerates; reject instead of
  // returning infinities silently.
  if (!(alpha > 2.0) || !std::isfinite(alpha))
    throw std::invalid_argument("alpha must be > 2");
  if (!(p > 0.0) || !(p <= 1.0))
    throw std::invalid_argument("p must be in (0, 1]");
  if (!(xi >= 0.0) || !(xi < 1.0))
    throw std::invalid_argument("xi must be in [0, 1)");
  if (tx_power != 1.0)
    throw std::invalid_argument("tx_power is normalized to 1");
}

Thresholds thresholds_from_rates(double R_t, double R_e) {
  if (!(R_e >= 0.0) || !std::isfinite(R_t))
    throw std::invalid_argument("rates must be non-negative");
  if (!(R_t >= R_e))
    throw std::invalid_argument("R_t must be >= R_e");
  return {std::exp2(R_t) - 1.0, std::exp2(R_e) - 1.0};
}

RateConfig RateConfig::from_rates(double R_t, double R_e) {
  const Thresholds th = thresholds_from_rates(R_t, R_e);
  RateConfig r;
  r.R_t = R_t;
  r.R_s = R_t - R_e;
  r.R_e = R_e;
  r.theta_t = th.theta_t;
  r.theta_e = th.theta_e;
  return r;
}

void RateConfig::validate() const {
  thresholds_from_rates(R_t, R_e);
  if (std::abs(R_t - (R_s + R_e)) > 1e-12 * (1.0 + std::abs(R_t)))
    throw std::invalid_argument("R_t must equal R_s + R_e");
}

RateConfig split_rates(const RateConfig& rates) {
  rates.validate();
  return RateConfig::from_rates(rates.R_t / 2.0, rates.R_e / 2.0);
}

std::string to_string(Traffic t) {
  return t == Traffic::Backlogged ? "backlogged" : "dynamic";
}

}  // namespace secnet
