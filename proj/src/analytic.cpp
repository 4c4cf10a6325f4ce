#include "secnet/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "secnet/special.hpp"

namespace secnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Secrecy outage in the overflow-safe form shared by Theorems 2 and 4:
// numerator 1 - e^-B, denominator (1 - e^-B) + e^(-qA - B), where q is the
// active probability of the interfering transmitters.
double secrecy_outage_core(const SystemParams& params, double q,
                           double theta_t, double theta_e) {
  if (!(theta_e > 0.0))
    throw std::domain_error("secrecy outage undefined for theta_e = 0");
  if (params.lambda_e == 0.0) return 0.0;
  const double delta = params.delta();
  const double cd = interference_constant(delta);
  const double a = interference_factor(params, theta_t);
  const double b =
      params.lambda_e / (q * params.lambda_l * std::pow(theta_e, delta) * cd);
  const double num = -std::expm1(-b);  // 1 - e^-B, exact for tiny B
  const double den = num + std::exp(-q * a - b);
  return num / den;
}

}  // namespace

double interference_factor(const SystemParams& params, double theta) {
  const double delta = params.delta();
  return params.lambda_l * kPi * params.r0 * params.r0 *
         std::pow(theta, delta) * interference_constant(delta);
}

double backlogged_mean_delay(const SystemParams& params, double theta_t) {
  if (params.p == 1.0) return kInf;
  const double delta = params.delta();
  const double a = interference_factor(params, theta_t);
  return std::exp(a * params.p * std::pow(1.0 - params.p, delta - 1.0)) /
         params.p;
}

double backlogged_secrecy_outage(const SystemParams& params, double theta_t,
                                 double theta_e) {
  return secrecy_outage_core(params, params.p, theta_t, theta_e);
}

double backlogged_mean_delay_split(const SystemParams& params,
                                   const RateConfig& rates) {
  const RateConfig primed = split_rates(rates);
  return 2.0 * backlogged_mean_delay(params, primed.theta_t);
}

double backlogged_secrecy_outage_split(const SystemParams& params,
                                       const RateConfig& rates) {
  const RateConfig primed = split_rates(rates);
  const double inner =
      backlogged_secrecy_outage(params, primed.theta_t, primed.theta_e);
  return inner * inner;
}

double dynamic_active_probability(const SystemParams& params, double theta_t) {
  if (params.xi == 0.0) return 0.0;
  const double a = interference_factor(params, theta_t);
  if (a == 0.0) return params.xi;
  const double z = -params.xi * a;
  if (z < lambert_branch_point()) return 1.0;  // no real fixed point: all-active
  const double q = -lambert_w0(z) / a;
  return q < 1.0 ? q : 1.0;
}

double dynamic_connection_failure(const SystemParams& params, double theta_t) {
  const double q = dynamic_active_probability(params, theta_t);
  if (q == 0.0) return 0.0;
  return 1.0 - params.xi / q;
}

double dynamic_mean_delay(const SystemParams& params, double theta_t) {
  const double pcf = dynamic_connection_failure(params, theta_t);
  return geo_g1_mean_delay(params.xi, params.p * (1.0 - pcf));
}

double dynamic_secrecy_outage(const SystemParams& params, double theta_t,
                              double theta_e) {
  const double q = dynamic_active_probability(params, theta_t);
  if (q == 0.0) return params.lambda_e == 0.0 ? 0.0 : 1.0;
  return secrecy_outage_core(params, q, theta_t, theta_e);
}

double dynamic_mean_delay_split(const SystemParams& params,
                                const RateConfig& rates) {
  const RateConfig primed = split_rates(rates);
  const double pcf = dynamic_connection_failure(params, primed.theta_t);
  const double mu = params.p * (1.0 - pcf) / 2.0;
  if (!(mu > params.xi)) return kInf;
  return 1.0 / (mu - params.xi);
}

double dynamic_secrecy_outage_split(const SystemParams& params,
                                    const RateConfig& rates) {
  const RateConfig primed = split_rates(rates);
  const double inner =
      dynamic_secrecy_outage(params, primed.theta_t, primed.theta_e);
  return inner * inner;
}

double geo_g1_mean_delay(double xi, double success_prob) {
  if (!(xi >= 0.0) || !(xi < 1.0))
    throw std::invalid_argument("xi must be in [0, 1)");
  if (!(success_prob > 0.0) || !(success_prob <= 1.0))
    throw std::invalid_argument("success probability must be in (0, 1]");
  if (success_prob <= xi) return kInf;
  return (1.0 - xi) / (success_prob - xi);
}

double conditional_connection_failure(const PointPattern& pattern,
                                      const SystemParams& params,
                                      double p_active, double theta_t) {
  const double r0 = torus_distance(pattern.typical_rx, Vec2{0.0, 0.0},
                                   pattern.torus_side);
  const double gain = theta_t * std::pow(r0, params.alpha);
  double survive = 1.0;
  for (const Vec2& y : pattern.interferers) {
    const double d = torus_distance(y, pattern.typical_rx, pattern.torus_side);
    survive *= p_active / (1.0 + gain * std::pow(d, -params.alpha)) +
               (1.0 - p_active);
  }
  return 1.0 - survive;
}

double conditional_secrecy_failure(const PointPattern& pattern,
                                   const SystemParams& params, double p_active,
                                   double theta_e) {
  double all_fail = 1.0;
  for (const Vec2& xe : pattern.eavesdroppers) {
    const double de = torus_distance(xe, Vec2{0.0, 0.0}, pattern.torus_side);
    const double gain = theta_e * std::pow(de, params.alpha);
    double miss = 1.0;  // P{this eavesdropper's SIR stays below theta_e}
    for (const Vec2& y : pattern.interferers) {
      const double d = torus_distance(y, xe, pattern.torus_side);
      miss *= p_active / (1.0 + gain * std::pow(d, -params.alpha)) +
              (1.0 - p_active);
    }
    all_fail *= 1.0 - miss;
  }
  return 1.0 - all_fail;
}

double conditional_secrecy_outage(double pcf, double psf) {
  if (!(pcf >= 0.0) || !(pcf <= 1.0) || !(psf >= 0.0) || !(psf <= 1.0))
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  if (pcf == 1.0 && psf == 0.0)
    throw std::domain_error(
        "secrecy outage undefined: packet never delivered, never exposed");
  return psf / (1.0 - pcf + psf * pcf);
}

AnalyticResult evaluate(const SystemParams& params, const RateConfig& rates,
                        const ScenarioConfig& scenario) {
  params.validate();
  rates.validate();
  AnalyticResult out;
  const RateConfig eff = scenario.split ? split_rates(rates) : rates;
  if (scenario.traffic == Traffic::Backlogged) {
    out.active_probability = params.p;
    out.connection_failure =
        -std::expm1(-params.p * interference_factor(params, eff.theta_t));
    out.occupancy = std::numeric_limits<double>::quiet_NaN();
    if (scenario.split) {
      out.mean_delay = backlogged_mean_delay_split(params, rates);
      out.secrecy_outage = backlogged_secrecy_outage_split(params, rates);
    } else {
      out.mean_delay = backlogged_mean_delay(params, eff.theta_t);
      out.secrecy_outage =
          backlogged_secrecy_outage(params, eff.theta_t, eff.theta_e);
    }
  } else {
    out.active_probability = dynamic_active_probability(params, eff.theta_t);
    out.connection_failure = dynamic_connection_failure(params, eff.theta_t);
    const double per_packet_service =
        params.p * (1.0 - out.connection_failure);
    const double packets = scenario.split ? 2.0 : 1.0;
    out.occupancy = per_packet_service > 0.0
                        ? packets * params.xi / per_packet_service
                        : kInf;
    if (scenario.split) {
      out.mean_delay = dynamic_mean_delay_split(params, rates);
      out.secrecy_outage = dynamic_secrecy_outage_split(params, rates);
    } else {
      out.mean_delay = dynamic_mean_delay(params, eff.theta_t);
      out.secrecy_outage =
          dynamic_secrecy_outage(params, eff.theta_t, eff.theta_e);
    }
  }
  return out;
}

}  // namespace secnet
