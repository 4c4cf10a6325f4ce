#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "secnet/analytic.hpp"
#include "secnet/core.hpp"
#include "secnet/pattern.hpp"
#include "secnet/rng.hpp"
#include "secnet/simulate.hpp"
#include "secnet/sweep.hpp"

namespace {

struct PointOptions {
  secnet::SystemParams params;
  double R_t = 3.0;
  double R_e = 1.0;
  std::string scenario = "backlogged";
  bool split = false;
};

void add_point_options(CLI::App* cmd, PointOptions& opt) {
  cmd->add_option("--lambda-l", opt.params.lambda_l,
                  "legitimate-transmitter intensity");
  cmd->add_option("--lambda-e", opt.params.lambda_e, "eavesdropper intensity");
  cmd->add_option("--r0", opt.params.r0, "link distance");
  cmd->add_option("--alpha", opt.params.alpha, "path-loss exponent (> 2)");
  cmd->add_option("--p", opt.params.p, "ALOHA access probability");
  cmd->add_option("--xi", opt.params.xi, "packet arrival probability per slot");
  cmd->add_option("--rt", opt.R_t, "codeword rate threshold R_t (bits/Hz)");
  cmd->add_option("--re", opt.R_e, "secrecy rate cost R_e (bits/Hz)");
  cmd->add_option("--scenario", opt.scenario, "backlogged or dynamic")
      ->check(CLI::IsMember({"backlogged", "dynamic"}));
  cmd->add_flag("--split", opt.split, "split each message into two packets");
}

secnet::ScenarioConfig scenario_of(const PointOptions& opt) {
  return {opt.scenario == "dynamic" ? secnet::Traffic::Dynamic
                                    : secnet::Traffic::Backlogged,
          opt.split};
}

void print_metric(const char* name, double value) {
  std::printf("%-18s %.9g\n", name, value);
}

int run_analytic(const PointOptions& opt) {
  const auto rates = secnet::RateConfig::from_rates(opt.R_t, opt.R_e);
  const auto scen = scenario_of(opt);
  const auto res = secnet::evaluate(opt.params, rates, scen);
  std::printf("scenario           %s%s\n", opt.scenario.c_str(),
              opt.split ? " (split)" : "");
  print_metric("theta_t", scen.split ? secnet::split_rates(rates).theta_t
                                     : rates.theta_t);
  print_metric("theta_e", scen.split ? secnet::split_rates(rates).theta_e
                                     : rates.theta_e);
  print_metric("mean_delay", res.mean_delay);
  print_metric("secrecy_outage", res.secrecy_outage);
  print_metric("q_star", res.active_probability);
  print_metric("p_cf", res.connection_failure);
  if (scen.traffic == secnet::Traffic::Dynamic)
    print_metric("occupancy", res.occupancy);
  return 0;
}

struct SimOptions {
  long reps = 20;
  std::uint64_t seed = 1;
  double torus_side = 40.0;
  long horizon = 5000;
  long warmup = -1;  // default: horizon / 5
  long messages = 200;
  std::string mode = "physical";
  int threads = 0;
};

void add_sim_options(CLI::App* cmd, SimOptions& opt) {
  cmd->add_option("--reps", opt.reps, "independent pattern replications");
  cmd->add_option("--seed", opt.seed, "master seed");
  cmd->add_option("--torus-side", opt.torus_side, "torus side (>= 20 r0)");
  cmd->add_option("--horizon", opt.horizon, "dynamic-scenario slots");
  cmd->add_option("--warmup", opt.warmup,
                  "dynamic warmup slots (default horizon/5)");
  cmd->add_option("--messages", opt.messages,
                  "backlogged messages per replication");
  cmd->add_option("--mode", opt.mode, "physical, independent or meanfield")
      ->check(CLI::IsMember({"physical", "independent", "meanfield"}));
  cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
}

int run_simulate(const PointOptions& popt, const SimOptions& sopt) {
  secnet::SweepConfig cfg;
  cfg.params = popt.params;
  cfg.R_t = popt.R_t;
  cfg.R_e = popt.R_e;
  cfg.traffic = scenario_of(popt).traffic;
  cfg.split = popt.split;
  cfg.swept = "lambda_l";
  cfg.grid = {popt.params.lambda_l};
  cfg.replications = sopt.reps;
  cfg.torus_side = sopt.torus_side;
  cfg.horizon = sopt.horizon;
  cfg.warmup = sopt.warmup >= 0 ? sopt.warmup : sopt.horizon / 5;
  cfg.messages = sopt.messages;
  cfg.master_seed = sopt.seed;
  cfg.mode = secnet::activity_mode_from_string(sopt.mode);
  cfg.threads = sopt.threads;

  const auto rows = secnet::run_sweep(cfg);
  std::printf("%-16s %12s %12s %12s %8s\n", "metric", "analytic", "sim_mean",
              "ci_95", "n");
  double censored = 0.0;
  for (const auto& row : rows) {
    censored = row.censored_frac;
    if (row.has_sim)
      std::printf("%-16s %12.6g %12.6g %12.6g %8ld\n", row.metric.c_str(),
                  row.analytic, row.sim.mean, row.sim.half_width_95,
                  row.sim.n);
    else
      std::printf("%-16s %12.6g %12s %12s %8d\n", row.metric.c_str(),
                  row.analytic, "-", "-", 0);
  }
  std::printf("censored_frac      %.6g%s\n", censored,
              censored > 0.01 ? "  [unstable: delay estimate unreliable]" : "");
  return 0;
}

int write_rows(const std::vector<secnet::ResultRow>& rows,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n",
                 path.c_str());
    return 1;
  }
  secnet::write_csv(rows, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "delay / secrecy-outage analysis of slotted ALOHA Poisson networks "
      "with eavesdroppers: closed forms plus a Monte Carlo simulator"};
  app.require_subcommand(1);

  PointOptions apoint;
  CLI::App* analytic =
      app.add_subcommand("analytic", "evaluate the closed forms at one point");
  add_point_options(analytic, apoint);

  PointOptions spoint;
  SimOptions sopt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimates with CIs at one point");
  add_point_options(simulate, spoint);
  add_sim_options(simulate, sopt);

  std::string config_path, out_path;
  std::optional<long> reps_override;
  std::optional<std::uint64_t> seed_override;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run a sweep from a config file");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--reps", reps_override, "override replications");
  sweep->add_option("--seed", seed_override, "override master seed");

  std::string preset_name, preset_out;
  SimOptions preset_sim;
  preset_sim.reps = 0;  // presets are analytic-only unless asked
  CLI::App* preset = app.add_subcommand(
      "preset", "run a figure-reproduction sweep (fig5..fig9)");
  preset->add_option("--name", preset_name, "preset name")->required();
  preset->add_option("--out", preset_out, "output CSV path")->required();
  add_sim_options(preset, preset_sim);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic->parsed()) return run_analytic(apoint);
    if (simulate->parsed()) return run_simulate(spoint, sopt);
    if (sweep->parsed()) {
      std::ifstream in(config_path);
      if (!in) {
        std::fprintf(stderr, "error: cannot read config '%s'\n",
                     config_path.c_str());
        return 1;
      }
      std::ostringstream text;
      text << in.rdbuf();
      secnet::SweepConfig cfg = secnet::parse_config(text.str());
      if (reps_override) cfg.replications = *reps_override;
      if (seed_override) cfg.master_seed = *seed_override;
      return write_rows(secnet::run_sweep(cfg), out_path);
    }
    if (preset->parsed()) {
      secnet::SweepConfig cfg = secnet::figure_preset(preset_name);
      cfg.replications = preset_sim.reps;
      cfg.master_seed = preset_sim.seed;
      cfg.torus_side = preset_sim.torus_side;
      cfg.horizon = preset_sim.horizon;
      cfg.warmup =
          preset_sim.warmup >= 0 ? preset_sim.warmup : preset_sim.horizon / 5;
      cfg.messages = preset_sim.messages;
      cfg.mode = secnet::activity_mode_from_string(preset_sim.mode);
      cfg.threads = preset_sim.threads;
      return write_rows(secnet::run_sweep(cfg), preset_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
