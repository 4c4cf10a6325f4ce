#pragma once

#include <string>

namespace secnet {

// Network and traffic parameters of the slotted Poisson bipolar system.
// Immutable value object once validated; safe to share across threads.
struct SystemParams {
  double lambda_l = 0.05;  // legitimate-transmitter intensity (nodes / unit area)
  double lambda_e = 0.01;  // eavesdropper intensity (nodes / unit area)
  double r0 = 1.0;         // transmitter-receiver link distance
  double alpha = 4.0;      // path-loss exponent, must exceed 2
  double p = 0.8;          // ALOHA access probability per slot
  double xi = 0.1;         // Bernoulli packet-arrival probability (dynamic traffic)
  double tx_power = 1.0;   // normalized transmit power; the SIR formulas are power-free

  double delta() const { return 2.0 / alpha; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Wiretap rate thresholds and the SIR thresholds they induce.
// theta = 2^R - 1 for each rate.
struct RateConfig {
  double R_t = 3.0;  // codeword rate (bits/Hz)
  double R_s = 2.0;  // confidential-message rate, R_s = R_t - R_e
  double R_e = 1.0;  // secrecy rate cost
  double theta_t = 7.0;
  double theta_e = 1.0;

  static RateConfig from_rates(double R_t, double R_e);
  void validate() const;
};

enum class Traffic { Backlogged, Dynamic };

struct ScenarioConfig {
  Traffic traffic = Traffic::Backlogged;
  bool split = false;  // message split into two half-rate packets
};

std::string to_string(Traffic t);

// theta = 2^R - 1 for the codeword and eavesdropping thresholds.
// Throws std::invalid_argument unless R_t >= R_e >= 0.
struct Thresholds {
  double theta_t;
  double theta_e;
};
Thresholds thresholds_from_rates(double R_t, double R_e);

// Halved rates of the two-packet transmission mechanism:
// R_s' = R_s/2, R_e' = R_e/2, R_t' = (R_s + R_e)/2, thresholds recomputed.
RateConfig split_rates(const RateConfig& rates);

}  // namespace secnet
