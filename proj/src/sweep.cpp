#include "secnet/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "secnet/analytic.hpp"
#include "secnet/pattern.hpp"
#include "secnet/rng.hpp"

namespace secnet {

namespace {

const std::vector<std::string> kMetricNames = {"mean_delay", "secrecy_outage",
                                               "q_star", "p_cf"};
const std::vector<std::string> kSweepable = {"lambda_l", "lambda_e", "r0",
                                             "alpha",    "p",        "xi",
                                             "R_t",      "R_e"};

[[noreturn]] void parse_fail(long line, long col, const std::string& what) {
  throw std::invalid_argument("config parse error at line " +
                              std::to_string(line) + ", column " +
                              std::to_string(col) + ": " + what);
}

[[noreturn]] void semantic_fail(const std::string& key,
                                const std::string& what) {
  throw std::invalid_argument("config error for key '" + key + "': " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double_at(const std::string& tok, long line, long col) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    parse_fail(line, col, "expected a number, got '" + tok + "'");
  return v;
}

long parse_long_at(const std::string& tok, long line, long col) {
  long v = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    parse_fail(line, col, "expected an integer, got '" + tok + "'");
  return v;
}

std::uint64_t parse_u64_at(const std::string& tok, long line, long col) {
  std::uint64_t v = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    parse_fail(line, col, "expected an unsigned integer, got '" + tok + "'");
  return v;
}

bool parse_bool_at(const std::string& tok, long line, long col) {
  if (tok == "true" || tok == "on" || tok == "1") return true;
  if (tok == "false" || tok == "off" || tok == "0") return false;
  parse_fail(line, col, "expected true/false, got '" + tok + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_grid_at(const std::string& value, long line,
                                  long col) {
  std::vector<double> grid;
  if (value.find(':') != std::string::npos) {
    const auto c1 = value.find(':');
    const auto c2 = value.find(':', c1 + 1);
    if (c2 == std::string::npos)
      parse_fail(line, col, "range grid must be start:step:stop");
    const double start = parse_double_at(trim(value.substr(0, c1)), line, col);
    const double step =
        parse_double_at(trim(value.substr(c1 + 1, c2 - c1 - 1)), line, col);
    const double stop = parse_double_at(trim(value.substr(c2 + 1)), line, col);
    if (!(step > 0.0)) parse_fail(line, col, "grid step must be > 0");
    const long count =
        static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) grid.push_back(start + i * step);
  } else {
    for (const std::string& tok : split_list(value))
      grid.push_back(parse_double_at(tok, line, col));
  }
  if (grid.empty()) parse_fail(line, col, "grid is empty");
  return grid;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::vector<double> step_grid(double start, double step, double stop) {
  std::vector<double> grid;
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(start + i * step);
  return grid;
}

}  // namespace

std::string to_string(ActivityMode mode) {
  switch (mode) {
    case ActivityMode::Physical: return "physical";
    case ActivityMode::Independent: return "independent";
    case ActivityMode::MeanField: return "meanfield";
  }
  return "physical";
}

ActivityMode activity_mode_from_string(const std::string& token) {
  if (token == "physical") return ActivityMode::Physical;
  if (token == "independent") return ActivityMode::Independent;
  if (token == "meanfield") return ActivityMode::MeanField;
  throw std::invalid_argument("unknown mode '" + token +
                              "'; expected physical, independent or meanfield");
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  std::set<std::string> seen;
  bool warmup_given = false;
  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      parse_fail(line_no, static_cast<long>(first) + 1,
                 "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const auto vstart = line.find_first_not_of(" \t", eq + 1);
    const long vcol =
        vstart == std::string::npos ? static_cast<long>(eq) + 2
                                    : static_cast<long>(vstart) + 1;
    const std::string value =
        vstart == std::string::npos ? "" : trim(line.substr(vstart));
    if (key.empty())
      parse_fail(line_no, static_cast<long>(first) + 1, "missing key");
    if (value.empty()) parse_fail(line_no, vcol, "missing value");
    if (!seen.insert(key).second)
      semantic_fail(key, "duplicate key at line " + std::to_string(line_no));

    if (key == "scenario") {
      if (value == "backlogged")
        cfg.traffic = Traffic::Backlogged;
      else if (value == "dynamic")
        cfg.traffic = Traffic::Dynamic;
      else
        parse_fail(line_no, vcol, "expected backlogged or dynamic");
    } else if (key == "split") {
      cfg.split = parse_bool_at(value, line_no, vcol);
    } else if (key == "lambda_l") {
      cfg.params.lambda_l = parse_double_at(value, line_no, vcol);
    } else if (key == "lambda_e") {
      cfg.params.lambda_e = parse_double_at(value, line_no, vcol);
    } else if (key == "r0") {
      cfg.params.r0 = parse_double_at(value, line_no, vcol);
    } else if (key == "alpha") {
      cfg.params.alpha = parse_double_at(value, line_no, vcol);
    } else if (key == "p") {
      cfg.params.p = parse_double_at(value, line_no, vcol);
    } else if (key == "xi") {
      cfg.params.xi = parse_double_at(value, line_no, vcol);
    } else if (key == "R_t") {
      cfg.R_t = parse_double_at(value, line_no, vcol);
    } else if (key == "R_e") {
      cfg.R_e = parse_double_at(value, line_no, vcol);
    } else if (key == "sweep") {
      cfg.swept = value;
    } else if (key == "grid") {
      cfg.grid = parse_grid_at(value, line_no, vcol);
    } else if (key == "replications") {
      cfg.replications = parse_long_at(value, line_no, vcol);
    } else if (key == "torus_side") {
      cfg.torus_side = parse_double_at(value, line_no, vcol);
    } else if (key == "horizon") {
      cfg.horizon = parse_long_at(value, line_no, vcol);
    } else if (key == "warmup") {
      cfg.warmup = parse_long_at(value, line_no, vcol);
      warmup_given = true;
    } else if (key == "messages") {
      cfg.messages = parse_long_at(value, line_no, vcol);
    } else if (key == "seed") {
      cfg.master_seed = parse_u64_at(value, line_no, vcol);
    } else if (key == "mode") {
      try {
        cfg.mode = activity_mode_from_string(value);
      } catch (const std::invalid_argument& e) {
        parse_fail(line_no, vcol, e.what());
      }
    } else if (key == "outputs") {
      cfg.outputs = split_list(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_long_at(value, line_no, vcol));
    } else {
      semantic_fail(key, "unknown key at line " + std::to_string(line_no));
    }
  }
  if (!warmup_given) cfg.warmup = cfg.horizon / 5;

  try {
    cfg.params.validate();
    thresholds_from_rates(cfg.R_t, cfg.R_e);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config error: ") + e.what());
  }
  bool sweepable = false;
  for (const std::string& name : kSweepable) sweepable |= name == cfg.swept;
  if (!sweepable)
    semantic_fail("sweep", "'" + cfg.swept + "' is not a sweepable parameter");
  if (cfg.grid.empty()) semantic_fail("grid", "grid is empty");
  if (cfg.replications < 0) semantic_fail("replications", "must be >= 0");
  if (!(cfg.torus_side >= 20.0 * cfg.params.r0))
    semantic_fail("torus_side", "must be at least 20 * r0");
  if (cfg.warmup < 0 || cfg.horizon <= cfg.warmup)
    semantic_fail("horizon", "require horizon > warmup >= 0");
  if (cfg.messages < 1) semantic_fail("messages", "must be >= 1");
  if (cfg.outputs.empty()) semantic_fail("outputs", "must select a metric");
  for (const std::string& m : cfg.outputs) {
    bool known = false;
    for (const std::string& name : kMetricNames) known |= name == m;
    if (!known) semantic_fail("outputs", "unknown metric '" + m + "'");
  }
  return cfg;
}

std::string serialize_config(const SweepConfig& cfg) {
  if (!cfg.variants.empty())
    throw std::invalid_argument(
        "configs with curve variants have no config-file form");
  std::ostringstream os;
  os << "scenario = " << to_string(cfg.traffic) << "\n";
  os << "split = " << (cfg.split ? "true" : "false") << "\n";
  os << "lambda_l = " << format_double(cfg.params.lambda_l) << "\n";
  os << "lambda_e = " << format_double(cfg.params.lambda_e) << "\n";
  os << "r0 = " << format_double(cfg.params.r0) << "\n";
  os << "alpha = " << format_double(cfg.params.alpha) << "\n";
  os << "p = " << format_double(cfg.params.p) << "\n";
  os << "xi = " << format_double(cfg.params.xi) << "\n";
  os << "R_t = " << format_double(cfg.R_t) << "\n";
  os << "R_e = " << format_double(cfg.R_e) << "\n";
  os << "sweep = " << cfg.swept << "\n";
  std::vector<std::string> grid_tokens;
  for (double v : cfg.grid) grid_tokens.push_back(format_double(v));
  os << "grid = " << join(grid_tokens) << "\n";
  os << "replications = " << cfg.replications << "\n";
  os << "torus_side = " << format_double(cfg.torus_side) << "\n";
  os << "horizon = " << cfg.horizon << "\n";
  os << "warmup = " << cfg.warmup << "\n";
  os << "messages = " << cfg.messages << "\n";
  os << "seed = " << cfg.master_seed << "\n";
  os << "mode = " << to_string(cfg.mode) << "\n";
  os << "outputs = " << join(cfg.outputs) << "\n";
  if (cfg.threads != 0) os << "threads = " << cfg.threads << "\n";
  return os.str();
}

SweepConfig figure_preset(const std::string& name) {
  SweepConfig cfg;  // paper-default base parameters
  if (name == "fig5") {
    cfg.swept = "p";
    cfg.grid = step_grid(0.05, 0.05, 0.95);
  } else if (name == "fig6") {
    cfg.swept = "lambda_l";
    cfg.grid = step_grid(0.01, 0.01, 0.30);
  } else if (name == "fig7") {
    cfg.swept = "lambda_l";
    cfg.grid = step_grid(0.01, 0.01, 0.30);
    for (double a : {3.0, 4.0, 5.0}) {
      CurveVariant v;
      v.alpha = a;
      cfg.variants.push_back(v);
    }
  } else if (name == "fig8") {
    cfg.traffic = Traffic::Dynamic;
    cfg.swept = "lambda_l";
    cfg.grid = step_grid(0.01, 0.01, 0.25);
    // R_s = 1 held fixed while the codeword threshold moves
    for (double rt : {2.0, 3.0, 4.0}) {
      CurveVariant v;
      v.R_t = rt;
      v.R_e = rt - 1.0;
      cfg.variants.push_back(v);
    }
  } else if (name == "fig9") {
    cfg.params.xi = 0.2;
    cfg.swept = "lambda_l";
    cfg.grid = step_grid(0.01, 0.01, 0.15);
    for (Traffic tr : {Traffic::Backlogged, Traffic::Dynamic}) {
      for (bool split : {false, true}) {
        CurveVariant v;
        v.traffic = tr;
        v.split = split;
        cfg.variants.push_back(v);
      }
    }
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "'; valid presets: fig5 fig6 fig7 fig8 fig9");
  }
  return cfg;
}

namespace {

struct PointSetup {
  SystemParams params;
  RateConfig rates;
  ScenarioConfig scenario;
};

PointSetup materialize(const SweepConfig& cfg, const CurveVariant* var,
                       double value) {
  PointSetup s;
  s.params = cfg.params;
  double rt = cfg.R_t;
  double re = cfg.R_e;
  s.scenario.traffic = cfg.traffic;
  s.scenario.split = cfg.split;
  if (var) {
    if (var->alpha) s.params.alpha = *var->alpha;
    if (var->R_t) rt = *var->R_t;
    if (var->R_e) re = *var->R_e;
    if (var->traffic) s.scenario.traffic = *var->traffic;
    if (var->split) s.scenario.split = *var->split;
  }
  if (cfg.swept == "lambda_l")
    s.params.lambda_l = value;
  else if (cfg.swept == "lambda_e")
    s.params.lambda_e = value;
  else if (cfg.swept == "r0")
    s.params.r0 = value;
  else if (cfg.swept == "alpha")
    s.params.alpha = value;
  else if (cfg.swept == "p")
    s.params.p = value;
  else if (cfg.swept == "xi")
    s.params.xi = value;
  else if (cfg.swept == "R_t")
    rt = value;
  else if (cfg.swept == "R_e")
    re = value;
  s.params.validate();
  s.rates = RateConfig::from_rates(rt, re);
  return s;
}

struct RepOutcome {
  double delay = std::numeric_limits<double>::quiet_NaN();
  double outage = std::numeric_limits<double>::quiet_NaN();
  double q_star = std::numeric_limits<double>::quiet_NaN();
  double p_cf = std::numeric_limits<double>::quiet_NaN();
  long censored = 0;
  long delivered = 0;
};

struct SimAggregate {
  Estimate delay, outage, q_star, p_cf;
  double censored_frac = 0.0;
};

Estimate collect(const std::vector<RepOutcome>& reps, double RepOutcome::* f) {
  std::vector<double> values;
  for (const RepOutcome& r : reps)
    if (!std::isnan(r.*f)) values.push_back(r.*f);
  return mean_estimate(values);
}

SimAggregate simulate_point(const SweepConfig& cfg, const PointSetup& s,
                            std::uint64_t variant_idx, std::uint64_t grid_idx) {
  const std::uint64_t point_seed =
      derive_seed(cfg.master_seed, variant_idx, grid_idx + 1);
  auto reps = run_replications<RepOutcome>(
      cfg.replications, point_seed, cfg.threads, [&](long, Rng& rng) {
        const PointPattern pattern =
            sample_network(s.params, cfg.torus_side, rng.raw());
        const SimResult res =
            s.scenario.traffic == Traffic::Backlogged
                ? simulate_backlogged(pattern, s.params, s.rates,
                                      s.scenario.split, cfg.messages, cfg.mode,
                                      rng)
                : simulate_dynamic(pattern, s.params, s.rates,
                                   s.scenario.split, cfg.horizon, cfg.warmup,
                                   cfg.mode, rng);
        RepOutcome o;
        o.censored = res.censored;
        o.delivered = static_cast<long>(res.records.size());
        if (!res.records.empty()) {
          const auto [delay, outage] = estimate_metrics(
              res.records, static_cast<long>(pattern.eavesdroppers.size()));
          o.delay = delay.mean;
          o.outage = outage.mean;
        }
        if (res.total_slots > 0)
          o.q_star = static_cast<double>(res.active_slots) / res.total_slots;
        if (res.attempts > 0)
          o.p_cf =
              static_cast<double>(res.connection_failures) / res.attempts;
        return o;
      });
  SimAggregate agg;
  agg.delay = collect(reps, &RepOutcome::delay);
  agg.outage = collect(reps, &RepOutcome::outage);
  agg.q_star = collect(reps, &RepOutcome::q_star);
  agg.p_cf = collect(reps, &RepOutcome::p_cf);
  long censored = 0, delivered = 0;
  for (const RepOutcome& r : reps) {
    censored += r.censored;
    delivered += r.delivered;
  }
  agg.censored_frac =
      censored + delivered > 0
          ? static_cast<double>(censored) / (censored + delivered)
          : 0.0;
  return agg;
}

double analytic_metric(const AnalyticResult& an, const std::string& metric) {
  if (metric == "mean_delay") return an.mean_delay;
  if (metric == "secrecy_outage") return an.secrecy_outage;
  if (metric == "q_star") return an.active_probability;
  return an.connection_failure;  // p_cf
}

const Estimate* sim_metric(const SimAggregate& agg, const std::string& metric) {
  const Estimate* est = nullptr;
  if (metric == "mean_delay") est = &agg.delay;
  if (metric == "secrecy_outage") est = &agg.outage;
  if (metric == "q_star") est = &agg.q_star;
  if (metric == "p_cf") est = &agg.p_cf;
  return est != nullptr && est->n > 0 ? est : nullptr;
}

std::string csv_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  std::vector<ResultRow> rows;
  const std::size_t n_variants =
      cfg.variants.empty() ? 1 : cfg.variants.size();
  for (std::size_t vi = 0; vi < n_variants; ++vi) {
    const CurveVariant* var =
        cfg.variants.empty() ? nullptr : &cfg.variants[vi];
    for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
      PointSetup setup;
      try {
        setup = materialize(cfg, var, cfg.grid[gi]);
      } catch (const std::exception& e) {
        throw std::invalid_argument(
            "grid point " + cfg.swept + "=" + format_double(cfg.grid[gi]) +
            " (index " + std::to_string(gi) + "): " + e.what());
      }
      const AnalyticResult an =
          evaluate(setup.params, setup.rates, setup.scenario);
      SimAggregate agg;
      const bool have_sim = cfg.replications > 0;
      if (have_sim)
        agg = simulate_point(cfg, setup, static_cast<std::uint64_t>(vi),
                             static_cast<std::uint64_t>(gi));
      for (const std::string& metric : cfg.outputs) {
        ResultRow row;
        row.traffic = setup.scenario.traffic;
        row.split = setup.scenario.split;
        row.params = setup.params;
        row.R_t = setup.rates.R_t;
        row.R_e = setup.rates.R_e;
        row.metric = metric;
        row.analytic = analytic_metric(an, metric);
        if (have_sim) {
          row.has_censored = true;
          row.censored_frac = agg.censored_frac;
          if (const Estimate* est = sim_metric(agg, metric)) {
            row.has_sim = true;
            row.sim = *est;
          }
        }
        row.n_reps = cfg.replications;
        row.seed = cfg.master_seed;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

const std::string& csv_header() {
  static const std::string header =
      "scenario,split,lambda_l,lambda_e,r0,alpha,p,xi,R_t,R_e,metric,analytic,"
      "sim_mean,sim_ci_lo,sim_ci_hi,n_reps,censored_frac,seed";
  return header;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << csv_header() << "\n";
  for (const ResultRow& row : rows) {
    os << to_string(row.traffic) << ',' << (row.split ? 1 : 0) << ','
       << csv_double(row.params.lambda_l) << ','
       << csv_double(row.params.lambda_e) << ',' << csv_double(row.params.r0)
       << ',' << csv_double(row.params.alpha) << ',' << csv_double(row.params.p)
       << ',' << csv_double(row.params.xi) << ',' << csv_double(row.R_t) << ','
       << csv_double(row.R_e) << ',' << row.metric << ','
       << csv_double(row.analytic) << ',';
    if (row.has_sim) {
      os << csv_double(row.sim.mean) << ','
         << csv_double(row.sim.mean - row.sim.half_width_95) << ','
         << csv_double(row.sim.mean + row.sim.half_width_95) << ',';
    } else {
      os << ",,,";
    }
    os << row.n_reps << ',';
    if (row.has_censored) os << csv_double(row.censored_frac);
    os << ',' << row.seed << "\n";
  }
}

bool SweepConfig::operator==(const SweepConfig& other) const {
  auto params_eq = [](const SystemParams& a, const SystemParams& b) {
    return a.lambda_l == b.lambda_l && a.lambda_e == b.lambda_e &&
           a.r0 == b.r0 && a.alpha == b.alpha && a.p == b.p && a.xi == b.xi &&
           a.tx_power == b.tx_power;
  };
  auto variant_eq = [](const CurveVariant& a, const CurveVariant& b) {
    return a.alpha == b.alpha && a.R_t == b.R_t && a.R_e == b.R_e &&
           a.traffic == b.traffic && a.split == b.split;
  };
  if (!(params_eq(params, other.params) && R_t == other.R_t &&
        R_e == other.R_e && traffic == other.traffic &&
        split == other.split && swept == other.swept && grid == other.grid &&
        replications == other.replications &&
        torus_side == other.torus_side && horizon == other.horizon &&
        warmup == other.warmup && messages == other.messages &&
        master_seed == other.master_seed && mode == other.mode &&
        outputs == other.outputs && threads == other.threads))
    return false;
  if (variants.size() != other.variants.size()) return false;
  for (std::size_t i = 0; i < variants.size(); ++i)
    if (!variant_eq(variants[i], other.variants[i])) return false;
  return true;
}

}  // namespace secnet
