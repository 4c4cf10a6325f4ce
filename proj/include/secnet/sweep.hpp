#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "secnet/core.hpp"
#include "secnet/simulate.hpp"

namespace secnet {

// One curve of a figure preset: overrides applied on top of the base config.
struct CurveVariant {
  std::optional<double> alpha;
  std::optional<double> R_t;
  std::optional<double> R_e;
  std::optional<Traffic> traffic;
  std::optional<bool> split;
};

// A parameter sweep: one swept parameter, a value grid, optional Monte Carlo
// replication on top of the always-present analytic columns.
struct SweepConfig {
  SystemParams params;
  double R_t = 3.0;
  double R_e = 1.0;
  Traffic traffic = Traffic::Backlogged;
  bool split = false;

  std::string swept = "lambda_l";
  std::vector<double> grid = {0.05};

  long replications = 0;
  double torus_side = 40.0;
  long horizon = 5000;
  long warmup = 1000;    // defaults to horizon/5 when not given explicitly
  long messages = 200;   // per-pattern messages in the backlogged scenario
  std::uint64_t master_seed = 1;
  ActivityMode mode = ActivityMode::Physical;
  std::vector<std::string> outputs = {"mean_delay", "secrecy_outage", "q_star",
                                      "p_cf"};
  std::vector<CurveVariant> variants;  // empty: single base curve
  int threads = 0;                     // 0 = hardware concurrency

  bool operator==(const SweepConfig&) const;
};

// Line-oriented `key = value` grammar; '#' starts a comment. Unknown or
// duplicate keys are rejected. Throws std::invalid_argument with
// line/column for syntax errors and the key name for semantic ones.
SweepConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SweepConfig& config);

// Sweep configurations reproducing the paper-style experiment axes.
// Valid names: fig5 fig6 fig7 fig8 fig9.
SweepConfig figure_preset(const std::string& name);

struct ResultRow {
  Traffic traffic = Traffic::Backlogged;
  bool split = false;
  SystemParams params;
  double R_t = 0.0;
  double R_e = 0.0;
  std::string metric;
  double analytic = 0.0;
  bool has_sim = false;
  Estimate sim;
  bool has_censored = false;
  double censored_frac = 0.0;
  long n_reps = 0;
  std::uint64_t seed = 0;
};

// One row per (variant x grid point x selected metric), in grid order,
// fully reproducible from the master seed.
std::vector<ResultRow> run_sweep(const SweepConfig& config);

// CSV with the fixed header
// scenario,split,lambda_l,lambda_e,r0,alpha,p,xi,R_t,R_e,metric,analytic,
// sim_mean,sim_ci_lo,sim_ci_hi,n_reps,censored_frac,seed
// Infinities are written as the literal token `inf`; simulation cells are
// empty when no replications ran.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& os);

const std::string& csv_header();

// ActivityMode <-> config/CLI token ("physical", "independent", "meanfield").
std::string to_string(ActivityMode mode);
ActivityMode activity_mode_from_string(const std::string& token);

}  // namespace secnet
