#pragma once

#include "secnet/core.hpp"
#include "secnet/pattern.hpp"

namespace secnet {

// Closed-form metrics for one (params, rates, scenario) point.
struct AnalyticResult {
  double mean_delay = 0.0;          // slots; +inf when the queue is unstable
  double secrecy_outage = 0.0;      // in [0, 1]
  double active_probability = 0.0;  // q* (dynamic) or p (backlogged)
  double connection_failure = 0.0;  // spatially averaged per-attempt P_cf
  double occupancy = 0.0;           // rho; NaN in the backlogged scenario
};

// A = lambda_l * pi * r0^2 * theta^delta * C(delta), the exponent scale that
// every spatial average reduces to.
double interference_factor(const SystemParams& params, double theta);

// --- backlogged traffic ---------------------------------------------------

// (1/p) exp(A p (1-p)^(delta-1)); +inf at p = 1.
double backlogged_mean_delay(const SystemParams& params, double theta_t);

// Jensen-approximated secrecy outage. Evaluated in the overflow-safe form
// (1 - e^-B) / (1 - e^-B + e^(-pA - B)) with B = lambda_e/(p lambda_l theta_e^delta C).
double backlogged_secrecy_outage(const SystemParams& params, double theta_t,
                                 double theta_e);

// Message-split variants: thresholds move to the primed rates, the delay
// doubles, the outage is squared.
double backlogged_mean_delay_split(const SystemParams& params,
                                   const RateConfig& rates);
double backlogged_secrecy_outage_split(const SystemParams& params,
                                       const RateConfig& rates);

// --- dynamic traffic --------------------------------------------------------

// Smallest solution of q = min{ xi / exp(-qA), 1 }, via the principal
// Lambert-W branch; saturates to 1 when -xi*A drops below -1/e.
double dynamic_active_probability(const SystemParams& params, double theta_t);

// min{ 1 + xi*A / W(-xi*A), 1 - xi }.
double dynamic_connection_failure(const SystemParams& params, double theta_t);

// Geo/G/1 delay (1-xi)/(p(1-P_cf)-xi); +inf when p(1-P_cf) <= xi.
double dynamic_mean_delay(const SystemParams& params, double theta_t);

// Backlogged outage form with p replaced by q*.
double dynamic_secrecy_outage(const SystemParams& params, double theta_t,
                              double theta_e);

// M/M/1 approximation 1/(mu - xi) with mu = p(1 - P_cf')/2 at the primed
// threshold; +inf when mu <= xi.
double dynamic_mean_delay_split(const SystemParams& params,
                                const RateConfig& rates);
double dynamic_secrecy_outage_split(const SystemParams& params,
                                    const RateConfig& rates);

// (1-xi)/(s-xi) for per-slot scheduled-and-successful probability s;
// +inf when s <= xi.
double geo_g1_mean_delay(double xi, double success_prob);

// --- conditional (given-geometry) forms ------------------------------------

// 1 - prod_y ( p / (1 + theta_t r0^alpha |y - x0|^-alpha) + 1 - p )
// over the interferers of `pattern`, torus distances.
double conditional_connection_failure(const PointPattern& pattern,
                                      const SystemParams& params,
                                      double p_active, double theta_t);

// 1 - prod_e ( 1 - prod_y ( p / (1 + theta_e |x_e|^alpha |y - x_e|^-alpha) + 1 - p ) ).
double conditional_secrecy_failure(const PointPattern& pattern,
                                   const SystemParams& params, double p_active,
                                   double theta_e);

// psf / (1 - pcf + psf * pcf): probability that a geometric retransmission
// run leaks at least one attempt. Throws std::domain_error when pcf = 1 and
// psf = 0 (the packet is never delivered and never exposed).
double conditional_secrecy_outage(double pcf, double psf);

// All four metric families for the requested scenario.
AnalyticResult evaluate(const SystemParams& params, const RateConfig& rates,
                        const ScenarioConfig& scenario);

}  // namespace secnet
