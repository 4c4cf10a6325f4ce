#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "secnet/analytic.hpp"
#include "secnet/core.hpp"
#include "secnet/pattern.hpp"
#include "secnet/rng.hpp"

namespace secnet {

// How interferer activity is drawn.
//   Physical:    one activity set per slot, shared by the receiver-side and
//                every eavesdropper-side SIR (the real system). In the
//                dynamic scenario the interferers run their own queues.
//   Independent: a fresh activity set per observer per slot, matching the
//                independence the closed forms assume. Dynamic interferers
//                are i.i.d. Bernoulli(q*).
//   MeanField:   shared activity sets, but dynamic interferers are i.i.d.
//                Bernoulli(q*) instead of queue-driven. Identical to
//                Physical in the backlogged scenario.
enum class ActivityMode { Physical, Independent, MeanField };

struct PacketRecord {
  long arrival_slot = 0;    // backlogged: slot where service started
  long delivered_slot = -1;
  long delay = 0;           // slots, arrival through delivery inclusive
  std::vector<long> attempt_slots;
  std::vector<bool> compromised_by;  // one flag per eavesdropper

  bool compromised() const;
};

struct Estimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  long n = 0;
};

// Outcome of one run over a fixed pattern. Attempt tallies cover the
// typical link only (post-warmup slots in the dynamic scenario).
struct SimResult {
  std::vector<PacketRecord> records;
  long censored = 0;       // arrived in-window, undelivered at the horizon
  long total_slots = 0;
  long active_slots = 0;   // slots in which the typical transmitter sent
  long attempts = 0;       // == active_slots
  long connection_failures = 0;
  long secrecy_failures = 0;  // attempts decoded by at least one eavesdropper

  double censored_fraction() const;
  bool unstable() const { return censored_fraction() > 0.01; }
};

SimResult simulate_backlogged(const PointPattern& pattern,
                              const SystemParams& params,
                              const RateConfig& rates, bool split,
                              long n_messages, ActivityMode mode, Rng& rng);

// Slotted system with Bernoulli(xi) arrivals at every transmitter. Records
// cover messages arriving in [warmup, horizon); the censored count reports
// those still queued at the horizon.
SimResult simulate_dynamic(const PointPattern& pattern,
                           const SystemParams& params, const RateConfig& rates,
                           bool split, long horizon, long warmup,
                           ActivityMode mode, Rng& rng);

// Sample mean +- 95% CI of delays over delivered records, and binomial CI of
// the fraction compromised by at least one eavesdropper.
// Throws std::invalid_argument on empty input.
std::pair<Estimate, Estimate> estimate_metrics(
    const std::vector<PacketRecord>& records, long eavesdropper_count);

// Attempt-level probe of a fixed pattern: the typical transmitter sends in
// every trial, interferers follow `p_active` and `mode`. Used to compare
// per-attempt frequencies against the conditional formulas.
struct AttemptTally {
  long attempts = 0;
  long connection_failures = 0;
  long secrecy_failures = 0;
};
AttemptTally probe_attempts(const PointPattern& pattern,
                            const SystemParams& params, double p_active,
                            double theta_t, double theta_e, long n_attempts,
                            ActivityMode mode, Rng& rng);

// --- replication utilities --------------------------------------------------

// Mean +- 1.96 sd/sqrt(n) over per-replication values (Kahan-compensated,
// reduced in index order).
Estimate mean_estimate(const std::vector<double>& values);

// p_hat +- 1.96 sqrt(p_hat(1-p_hat)/n).
Estimate binomial_estimate(long successes, long trials);

// Runs fn(replication_index, rng) on a worker pool; each replication owns an
// RNG derived from (master_seed, index), and results land in index order, so
// output never depends on scheduling.
template <typename T, typename Fn>
std::vector<T> run_replications(long n, std::uint64_t master_seed, int threads,
                                Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned nt =
      threads > 0 ? static_cast<unsigned>(threads)
                  : (n < static_cast<long>(hw) ? static_cast<unsigned>(n) : hw);
  std::vector<std::thread> pool;
  std::mutex error_mutex;
  for (unsigned t = 0; t < nt && t < static_cast<unsigned>(n); ++t) {
    pool.emplace_back([&] {
      long i;
      while ((i = next.fetch_add(1)) < n && !failed.load()) {
        try {
          Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(i)));
          out[static_cast<std::size_t>(i)] = fn(i, rng);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
  return out;
}

// --- Rao-Blackwellized estimators over sampled patterns ---------------------

// Per-pattern conditional values averaged over fresh PPP samples:
// delay  = E[ mult / (p (1 - P_cf^Phi)) ]   (mult = 2 under split)
// p_cf   = E[ P_cf^Phi ]
// outage = E[ P_sf / (1 - P_cf (1 - P_sf)) ]  (no-split geometric-run form)
struct RaoBlackwell {
  Estimate delay;
  Estimate p_cf;
  Estimate secrecy_outage;
};
RaoBlackwell rao_blackwell_backlogged(const SystemParams& params,
                                      const RateConfig& rates, bool split,
                                      double torus_side, long n_patterns,
                                      std::uint64_t master_seed, int threads);

// Same estimator evaluated on patterns sampled at side 2L and on their
// central-window restrictions at side L, pairwise from one draw; isolates
// the truncation bias of the smaller torus.
struct TorusDoubling {
  RaoBlackwell half;  // side L
  RaoBlackwell full;  // side 2L
};
TorusDoubling torus_doubling_check(const SystemParams& params,
                                   const RateConfig& rates, bool split,
                                   double torus_side, long n_patterns,
                                   std::uint64_t master_seed, int threads);

}  // namespace secnet
