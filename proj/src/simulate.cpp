#include "secnet/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <memory>
#include <stdexcept>

namespace secnet {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Precomputed |.|^-alpha attenuation tables for the typical link and the
// eavesdropping links of one pattern.
struct Geometry {
  double sig_rx = 0.0;              // typical tx -> typical rx
  std::vector<double> itf_to_rx;    // interferer j -> typical rx
  std::vector<double> eav_sig;      // typical tx -> eavesdropper e
  std::vector<double> itf_to_eav;   // [e * n_itf + j]
  long n_itf = 0;
  long n_eav = 0;

  Geometry(const PointPattern& pat, double alpha) {
    const double side = pat.torus_side;
    n_itf = static_cast<long>(pat.interferers.size());
    n_eav = static_cast<long>(pat.eavesdroppers.size());
    const Vec2 origin{0.0, 0.0};
    sig_rx = std::pow(torus_distance(pat.typical_rx, origin, side), -alpha);
    itf_to_rx.resize(n_itf);
    for (long j = 0; j < n_itf; ++j)
      itf_to_rx[j] = std::pow(
          torus_distance(pat.interferers[j], pat.typical_rx, side), -alpha);
    eav_sig.resize(n_eav);
    itf_to_eav.resize(n_eav * n_itf);
    for (long e = 0; e < n_eav; ++e) {
      eav_sig[e] =
          std::pow(torus_distance(pat.eavesdroppers[e], origin, side), -alpha);
      for (long j = 0; j < n_itf; ++j)
        itf_to_eav[e * n_itf + j] = std::pow(
            torus_distance(pat.interferers[j], pat.eavesdroppers[e], side),
            -alpha);
    }
  }
};

// Extra tables for the interacting-queue scenario: attenuation into each
// interferer's own receiver.
struct QueueGeometry {
  std::vector<double> itf_to_itf_rx;  // [i * n_itf + j]: tx j -> rx of i
  std::vector<double> typ_to_itf_rx;  // typical tx -> rx of i
  double own_sig = 0.0;               // tx i -> rx i, distance r0

  QueueGeometry(const PointPattern& pat, double r0, double alpha) {
    const double side = pat.torus_side;
    const long n = static_cast<long>(pat.interferers.size());
    own_sig = std::pow(r0, -alpha);
    itf_to_itf_rx.assign(n * n, 0.0);
    typ_to_itf_rx.resize(n);
    const Vec2 origin{0.0, 0.0};
    for (long i = 0; i < n; ++i) {
      typ_to_itf_rx[i] =
          std::pow(torus_distance(origin, pat.interferer_rx[i], side), -alpha);
      for (long j = 0; j < n; ++j) {
        if (j == i) continue;
        itf_to_itf_rx[i * n + j] = std::pow(
            torus_distance(pat.interferers[j], pat.interferer_rx[i], side),
            -alpha);
      }
    }
  }
};

bool sir_reaches(double signal_fading, double signal_attn, double threshold,
                 double interference) {
  if (interference == 0.0) return true;  // interference-limited: SIR = +inf
  return signal_fading * signal_attn >= threshold * interference;
}

// One transmission attempt by the typical transmitter with i.i.d.
// Bernoulli(q) interferer activity. In shared mode a single activity set
// drives the receiver and all eavesdroppers; otherwise each observer draws
// its own. decode_out (when non-null) gets |='d per-eavesdropper flags.
bool attempt_iid(const Geometry& g, double q, double theta_t, double theta_e,
                 bool shared, Rng& rng, std::vector<char>& flags,
                 std::vector<char>* decode_out, bool& any_decode) {
  any_decode = false;
  double interference = 0.0;
  if (shared) {
    flags.assign(g.n_itf, 0);
    for (long j = 0; j < g.n_itf; ++j) {
      if (rng.chance(q)) {
        flags[j] = 1;
        interference += rng.exponential() * g.itf_to_rx[j];
      }
    }
  } else {
    for (long j = 0; j < g.n_itf; ++j)
      if (rng.chance(q)) interference += rng.exponential() * g.itf_to_rx[j];
  }
  const bool rx_ok =
      sir_reaches(rng.exponential(), g.sig_rx, theta_t, interference);

  for (long e = 0; e < g.n_eav; ++e) {
    double ie = 0.0;
    const double* attn = g.itf_to_eav.data() + e * g.n_itf;
    if (shared) {
      for (long j = 0; j < g.n_itf; ++j)
        if (flags[j]) ie += rng.exponential() * attn[j];
    } else {
      for (long j = 0; j < g.n_itf; ++j)
        if (rng.chance(q)) ie += rng.exponential() * attn[j];
    }
    if (sir_reaches(rng.exponential(), g.eav_sig[e], theta_e, ie)) {
      any_decode = true;
      if (decode_out) (*decode_out)[e] = 1;
    }
  }
  return rx_ok;
}

// Attempt resolution when the active interferer set is explicit (physical
// dynamic mode). Activity is shared by every observer.
bool attempt_with_active(const Geometry& g, const std::vector<long>& active,
                         double theta_t, double theta_e, Rng& rng,
                         std::vector<char>* decode_out, bool& any_decode) {
  any_decode = false;
  double interference = 0.0;
  for (long j : active) interference += rng.exponential() * g.itf_to_rx[j];
  const bool rx_ok =
      sir_reaches(rng.exponential(), g.sig_rx, theta_t, interference);
  for (long e = 0; e < g.n_eav; ++e) {
    double ie = 0.0;
    const double* attn = g.itf_to_eav.data() + e * g.n_itf;
    for (long j : active) ie += rng.exponential() * attn[j];
    if (sir_reaches(rng.exponential(), g.eav_sig[e], theta_e, ie)) {
      any_decode = true;
      if (decode_out) (*decode_out)[e] = 1;
    }
  }
  return rx_ok;
}

void fold_packet_flags(std::vector<bool>& message_flags,
                       const std::vector<char>& packet_flags) {
  for (std::size_t e = 0; e < message_flags.size(); ++e)
    message_flags[e] = message_flags[e] && packet_flags[e] != 0;
}

}  // namespace

bool PacketRecord::compromised() const {
  return std::find(compromised_by.begin(), compromised_by.end(), true) !=
         compromised_by.end();
}

double SimResult::censored_fraction() const {
  const double total = static_cast<double>(records.size()) + censored;
  return total > 0.0 ? censored / total : 0.0;
}

SimResult simulate_backlogged(const PointPattern& pattern,
                              const SystemParams& params,
                              const RateConfig& rates, bool split,
                              long n_messages, ActivityMode mode, Rng& rng) {
  params.validate();
  const RateConfig eff = split ? split_rates(rates) : rates;
  const Geometry g(pattern, params.alpha);
  const bool shared = mode != ActivityMode::Independent;
  const int packets = split ? 2 : 1;

  SimResult out;
  out.records.reserve(n_messages);
  std::vector<char> flags;
  std::vector<char> packet_decode(g.n_eav);
  long slot = 0;
  for (long m = 0; m < n_messages; ++m) {
    PacketRecord rec;
    rec.arrival_slot = slot;
    rec.compromised_by.assign(g.n_eav, true);
    for (int pk = 0; pk < packets; ++pk) {
      packet_decode.assign(g.n_eav, 0);
      bool delivered = false;
      while (!delivered) {
        ++out.total_slots;
        if (rng.chance(params.p)) {
          ++out.active_slots;
          ++out.attempts;
          rec.attempt_slots.push_back(slot);
          bool any_decode = false;
          delivered = attempt_iid(g, params.p, eff.theta_t, eff.theta_e,
                                  shared, rng, flags, &packet_decode,
                                  any_decode);
          if (!delivered) ++out.connection_failures;
          if (any_decode) ++out.secrecy_failures;
        }
        ++slot;
      }
      fold_packet_flags(rec.compromised_by, packet_decode);
    }
    rec.delivered_slot = slot - 1;
    rec.delay = slot - rec.arrival_slot;
    out.records.push_back(std::move(rec));
  }
  return out;
}

SimResult simulate_dynamic(const PointPattern& pattern,
                           const SystemParams& params, const RateConfig& rates,
                           bool split, long horizon, long warmup,
                           ActivityMode mode, Rng& rng) {
  params.validate();
  if (!(horizon > warmup) || warmup < 0)
    throw std::invalid_argument("require horizon > warmup >= 0");
  const RateConfig eff = split ? split_rates(rates) : rates;
  const Geometry g(pattern, params.alpha);
  const int packets = split ? 2 : 1;
  const bool physical = mode == ActivityMode::Physical;

  // Mean-field replacement activity for the non-physical modes.
  const double q_star =
      physical ? 0.0 : dynamic_active_probability(params, eff.theta_t);

  std::vector<long> pending;      // interferer packet backlogs (physical)
  std::vector<long> active;       // indices of active interferers this slot
  std::unique_ptr<QueueGeometry> qg;
  if (physical) {
    pending.assign(g.n_itf, 0);
    qg = std::make_unique<QueueGeometry>(pattern, params.r0, params.alpha);
  }

  std::deque<long> queue;  // arrival slot per queued message
  int hol_packet = 0;
  std::vector<char> hol_decode_first(g.n_eav);
  std::vector<char> hol_decode(g.n_eav, 0);
  std::vector<long> hol_attempts;

  SimResult out;
  out.total_slots = horizon - warmup;
  std::vector<char> flags;

  for (long slot = 0; slot < horizon; ++slot) {
    // arrivals first; a message can be served in its arrival slot
    if (rng.chance(params.xi)) queue.push_back(slot);
    if (physical) {
      for (long i = 0; i < g.n_itf; ++i)
        if (rng.chance(params.xi)) pending[i] += packets;
    }

    const bool typ_active = !queue.empty() && rng.chance(params.p);
    if (physical) {
      active.clear();
      for (long i = 0; i < g.n_itf; ++i)
        if (pending[i] > 0 && rng.chance(params.p)) active.push_back(i);
    }

    if (typ_active) {
      if (slot >= warmup) {
        ++out.active_slots;
        ++out.attempts;
      }
      hol_attempts.push_back(slot);
      bool any_decode = false;
      bool ok;
      if (physical) {
        ok = attempt_with_active(g, active, eff.theta_t, eff.theta_e, rng,
                                 &hol_decode, any_decode);
      } else {
        ok = attempt_iid(g, q_star, eff.theta_t, eff.theta_e,
                         mode == ActivityMode::MeanField, rng, flags,
                         &hol_decode, any_decode);
      }
      if (slot >= warmup) {
        if (!ok) ++out.connection_failures;
        if (any_decode) ++out.secrecy_failures;
      }
      if (ok) {
        if (hol_packet + 1 < packets) {
          hol_decode_first = hol_decode;
          hol_decode.assign(g.n_eav, 0);
          ++hol_packet;
        } else {
          const long arrival = queue.front();
          queue.pop_front();
          if (arrival >= warmup) {
            PacketRecord rec;
            rec.arrival_slot = arrival;
            rec.delivered_slot = slot;
            rec.delay = slot - arrival + 1;
            rec.attempt_slots = std::move(hol_attempts);
            rec.compromised_by.assign(g.n_eav, true);
            if (packets == 2) fold_packet_flags(rec.compromised_by, hol_decode_first);
            fold_packet_flags(rec.compromised_by, hol_decode);
            out.records.push_back(std::move(rec));
          }
          hol_attempts = {};
          hol_decode.assign(g.n_eav, 0);
          hol_packet = 0;
        }
      }
    }

    if (physical && !active.empty()) {
      const long n = g.n_itf;
      for (long i : active) {
        double interference = 0.0;
        for (long j : active)
          if (j != i)
            interference += rng.exponential() * qg->itf_to_itf_rx[i * n + j];
        if (typ_active)
          interference += rng.exponential() * qg->typ_to_itf_rx[i];
        if (sir_reaches(rng.exponential(), qg->own_sig, eff.theta_t,
                        interference))
          --pending[i];
      }
    }
  }

  for (long arrival : queue)
    if (arrival >= warmup) ++out.censored;
  return out;
}

std::pair<Estimate, Estimate> estimate_metrics(
    const std::vector<PacketRecord>& records, long eavesdropper_count) {
  std::vector<double> delays;
  long compromised = 0;
  long delivered = 0;
  for (const PacketRecord& rec : records) {
    if (rec.delivered_slot < 0) continue;
    if (static_cast<long>(rec.compromised_by.size()) != eavesdropper_count)
      throw std::invalid_argument("record flag count mismatch");
    ++delivered;
    delays.push_back(static_cast<double>(rec.delay));
    if (rec.compromised()) ++compromised;
  }
  if (delivered == 0)
    throw std::invalid_argument("no delivered records to estimate from");
  return {mean_estimate(delays), binomial_estimate(compromised, delivered)};
}

AttemptTally probe_attempts(const PointPattern& pattern,
                            const SystemParams& params, double p_active,
                            double theta_t, double theta_e, long n_attempts,
                            ActivityMode mode, Rng& rng) {
  const Geometry g(pattern, params.alpha);
  const bool shared = mode != ActivityMode::Independent;
  AttemptTally tally;
  tally.attempts = n_attempts;
  std::vector<char> flags;
  for (long i = 0; i < n_attempts; ++i) {
    bool any_decode = false;
    const bool ok = attempt_iid(g, p_active, theta_t, theta_e, shared, rng,
                                flags, nullptr, any_decode);
    if (!ok) ++tally.connection_failures;
    if (any_decode) ++tally.secrecy_failures;
  }
  return tally;
}

Estimate mean_estimate(const std::vector<double>& values) {
  Estimate est;
  est.n = static_cast<long>(values.size());
  if (est.n == 0) return est;
  KahanSum sum;
  for (double v : values) sum.add(v);
  est.mean = sum.sum / est.n;
  if (est.n > 1) {
    KahanSum sq;
    for (double v : values) sq.add((v - est.mean) * (v - est.mean));
    const double var = sq.sum / (est.n - 1);
    est.half_width_95 = 1.96 * std::sqrt(var / est.n);
  }
  return est;
}

Estimate binomial_estimate(long successes, long trials) {
  if (trials <= 0) throw std::invalid_argument("binomial CI needs trials > 0");
  Estimate est;
  est.n = trials;
  est.mean = static_cast<double>(successes) / trials;
  est.half_width_95 = 1.96 * std::sqrt(est.mean * (1.0 - est.mean) / trials);
  return est;
}

namespace {

std::array<double, 3> conditional_triplet(const PointPattern& pattern,
                                          const SystemParams& params,
                                          const RateConfig& eff, int mult) {
  const double pcf =
      conditional_connection_failure(pattern, params, params.p, eff.theta_t);
  const double psf =
      conditional_secrecy_failure(pattern, params, params.p, eff.theta_e);
  const double delay = mult / (params.p * (1.0 - pcf));
  const double pso = psf > 0.0 ? conditional_secrecy_outage(pcf, psf) : 0.0;
  return {delay, pcf, pso};
}

RaoBlackwell reduce_triplets(const std::vector<std::array<double, 3>>& rows) {
  std::vector<double> delays, pcfs, psos;
  delays.reserve(rows.size());
  pcfs.reserve(rows.size());
  psos.reserve(rows.size());
  for (const auto& r : rows) {
    delays.push_back(r[0]);
    pcfs.push_back(r[1]);
    psos.push_back(r[2]);
  }
  return {mean_estimate(delays), mean_estimate(pcfs), mean_estimate(psos)};
}

}  // namespace

RaoBlackwell rao_blackwell_backlogged(const SystemParams& params,
                                      const RateConfig& rates, bool split,
                                      double torus_side, long n_patterns,
                                      std::uint64_t master_seed, int threads) {
  params.validate();
  const RateConfig eff = split ? split_rates(rates) : rates;
  const int mult = split ? 2 : 1;
  auto rows = run_replications<std::array<double, 3>>(
      n_patterns, master_seed, threads, [&](long, Rng& rng) {
        const PointPattern pat = sample_network(params, torus_side, rng.raw());
        return conditional_triplet(pat, params, eff, mult);
      });
  return reduce_triplets(rows);
}

TorusDoubling torus_doubling_check(const SystemParams& params,
                                   const RateConfig& rates, bool split,
                                   double torus_side, long n_patterns,
                                   std::uint64_t master_seed, int threads) {
  params.validate();
  const RateConfig eff = split ? split_rates(rates) : rates;
  const int mult = split ? 2 : 1;
  using Pair = std::array<std::array<double, 3>, 2>;
  auto rows = run_replications<Pair>(
      n_patterns, master_seed, threads, [&](long, Rng& rng) {
        const PointPattern big =
            sample_network(params, 2.0 * torus_side, rng.raw());
        const PointPattern small = restrict_to_half(big);
        return Pair{conditional_triplet(small, params, eff, mult),
                    conditional_triplet(big, params, eff, mult)};
      });
  std::vector<std::array<double, 3>> halves, fulls;
  for (const auto& r : rows) {
    halves.push_back(r[0]);
    fulls.push_back(r[1]);
  }
  return {reduce_triplets(halves), reduce_triplets(fulls)};
}

}  // namespace secnet
