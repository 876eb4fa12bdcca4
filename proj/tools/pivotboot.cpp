// pivotboot: bootstrap pivots, intervals and coverage experiments from the
// command line. Every report embeds a manifest; `pivotboot replay report.json`
// re-runs it and reproduces the report byte for byte.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pivotboot/bounds.hpp"
#include "pivotboot/errors.hpp"
#include "pivotboot/intervals.hpp"
#include "pivotboot/models.hpp"
#include "pivotboot/multi_bootstrap.hpp"
#include "pivotboot/report.hpp"
#include "pivotboot/simulation.hpp"

namespace pb = pivotboot;
using pb::Json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kCiRedraws = 100;
constexpr double kReferenceNominal = 0.9000169;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- input files ----------------------------------------------------------

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    if (token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(v)) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": not a finite number: '" + std::string(trim(line)) +
                       "'");
    }
    values.push_back(v);
  }
  return values;
}

pb::Sample<double> read_sample(const std::string& path) {
  auto values = read_numbers(path);
  if (values.size() < 2) throw UsageError(path + ": need at least 2 data values");
  pb::Vector<double> v = Eigen::Map<const pb::Vector<double>>(values.data(), static_cast<Eigen::Index>(values.size()));
  return pb::Sample<double>(std::move(v));
}

pb::WeightVector<double> read_weights(const std::string& path, Eigen::Index n) {
  const auto values = read_numbers(path);
  if (static_cast<Eigen::Index>(values.size()) != n) {
    throw UsageError(path + ": expected " + std::to_string(n) + " weights, got " + std::to_string(values.size()));
  }
  pb::WeightVector<double> w;
  w.counts = Eigen::Map<const pb::Vector<double>>(values.data(), n);
  if ((w.counts.array() < 0.0).any()) throw UsageError(path + ": weights must be nonnegative");
  w.m = w.counts.sum();
  if (!(w.m > 0.0)) throw UsageError(path + ": weights sum to zero");
  const bool integral = (w.counts.array() == w.counts.array().round()).all();
  w.scheme = integral ? pb::WeightScheme::Multinomial : pb::WeightScheme::IidPositive;
  return w;
}

// ---- config access --------------------------------------------------------

template <typename T>
T get(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw UsageError(std::string("config is missing '") + key + "'");
  try {
    return cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

std::optional<double> get_optional(const Json& cfg, const char* key) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return std::nullopt;
  return get<double>(cfg, key);
}

pb::Model model_of(const Json& cfg) {
  try {
    return pb::parse_model(get<std::string>(cfg, "model"));
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
}

// ---- commands -------------------------------------------------------------

Json counts_json(const pb::WeightVector<double>& w) {
  if (w.scheme == pb::WeightScheme::Multinomial) {
    std::vector<std::int64_t> counts;
    for (double c : w.counts) counts.push_back(static_cast<std::int64_t>(c));
    return counts;
  }
  return std::vector<double>(w.counts.begin(), w.counts.end());
}

Json run_ci(const Json& cfg) {
  const auto s = read_sample(get<std::string>(cfg, "data"));
  const auto method = get<std::string>(cfg, "method");
  const auto alpha = get<double>(cfg, "alpha");
  const auto x = get_optional(cfg, "x");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if ((method == "ecdf" || method == "cdf") && !x) throw UsageError("method " + method + " needs --x");
  if (s.has_zero_variance() && method != "ecdf" && method != "cdf") throw pb::ZeroVariance();

  auto build = [&](const pb::WeightVector<double>& w, const pb::CenteredWeights<double>& cw) {
    if (method == "population") return pb::ci_population_mean(s, cw, alpha);
    if (method == "sample") return pb::ci_sample_mean(s, w, cw, alpha);
    if (method == "finitepop") return pb::ci_finite_pop_mean(s, w, cw, alpha);
    if (method == "superpop") return pb::ci_superpop_mean(s, w, cw, alpha);
    if (method == "ecdf") return pb::ci_ecdf(s, w, cw, *x, alpha, pb::IntervalTarget::EcdfValue);
    if (method == "cdf") return pb::ci_ecdf(s, w, cw, *x, alpha, pb::IntervalTarget::CdfValue);
    throw UsageError("unknown method '" + method + "'");
  };

  pb::WeightVector<double> w;
  std::optional<pb::Interval<double>> interval;
  int redraws = 0;
  const Json& weights_file = cfg.at("weights");
  if (!weights_file.is_null()) {
    w = read_weights(weights_file.get<std::string>(), s.size());
    const auto cw = pb::center(w, s.size());
    try {
      interval = build(w, cw);
    } catch (const pb::DegenerateWeights& e) {
      throw Exhausted(std::string("weights file: ") + e.what());
    } catch (const pb::ZeroBootstrapVariance& e) {
      throw Exhausted(std::string("weights file: ") + e.what());
    } catch (const pb::DegenerateScale& e) {
      throw Exhausted(std::string("weights file: ") + e.what());
    }
  } else {
    const auto m = get<std::int64_t>(cfg, "m");
    if (m < 1) throw UsageError("--m must be positive");
    pb::Stream stream(get<std::uint64_t>(cfg, "seed"));
    for (; redraws <= kCiRedraws && !interval; ++redraws) {
      w = pb::draw_multinomial_weights<double>(s.size(), m, stream);
      const auto cw = pb::center(w, s.size());
      try {
        interval = build(w, cw);
        break;
      } catch (const pb::DegenerateWeights&) {
      } catch (const pb::ZeroBootstrapVariance&) {
      } catch (const pb::DegenerateScale&) {
      }
    }
    if (!interval) throw Exhausted("weights degenerate after " + std::to_string(kCiRedraws) + " redraws");
  }

  Json out = pb::to_json(*interval);
  out["weights"] = counts_json(w);
  out["m"] = w.m;
  out["redraws"] = redraws;
  return out;
}

Json run_weights(const Json& cfg) {
  const auto n = get<std::int64_t>(cfg, "n");
  const auto m = get<std::int64_t>(cfg, "m");
  if (n < 1 || m < 1) throw UsageError("--n and --m must be positive");
  pb::Stream stream(get<std::uint64_t>(cfg, "seed"));
  int redraws = 0;
  for (; redraws <= kCiRedraws; ++redraws) {
    const auto w = pb::draw_multinomial_weights<double>(n, m, stream);
    const auto cw = pb::center(w, n);
    if (pb::detail::is_degenerate(cw)) continue;
    Json out;
    out["counts"] = counts_json(w);
    out["m"] = m;
    out["centered"] = std::vector<double>(cw.values.begin(), cw.values.end());
    out["sum_squares"] = cw.sum_squares;
    out["sum_abs"] = cw.sum_abs;
    out["redraws"] = redraws;
    return out;
  }
  throw Exhausted("weights degenerate after " + std::to_string(kCiRedraws) + " redraws");
}

Json run_ydist(const Json& cfg) {
  const int B = get<int>(cfg, "B");
  if (B < 2) throw UsageError("--B must be >= 2");
  const auto quad = pb::y_distribution(B);
  const auto exact = pb::y_distribution_exact(B);
  Json out;
  out["B"] = B;
  out["pmf"] = quad.pmf;
  out["pmf_exact"] = exact.pmf;
  // Closed form of the uniform law: P(Y <= l) = (l + 1) / (B + 1).
  std::vector<double> cumulative;
  for (int l = 0; l <= B; ++l) cumulative.push_back(static_cast<double>(l + 1) / static_cast<double>(B + 1));
  out["cumulative"] = cumulative;
  double diff = 0.0;
  for (std::size_t l = 0; l < quad.pmf.size(); ++l) diff = std::max(diff, std::abs(quad.pmf[l] - exact.pmf[l]));
  out["max_abs_difference"] = diff;
  if (const auto alpha = get_optional(cfg, "alpha")) {
    if (!(*alpha > 0.0 && *alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    const int y = pb::y_quantile(B, *alpha);
    out["alpha"] = *alpha;
    out["y"] = y;
    out["nominal"] = cumulative[static_cast<std::size_t>(y)];
    out["cutoff_rank"] = pb::refined_cutoff_rank(B, *alpha);
  }
  out["nonzero_sign_probability"] = 1.0 - exact.pmf.front();
  if (B == 9) out["reference_nominal"] = kReferenceNominal;
  return out;
}

Json run_bound(const Json& cfg) {
  Json out;
  if (cfg.contains("rate") && !cfg.at("rate").is_null()) {
    pb::RateKind kind;
    try {
      kind = pb::parse_rate_kind(get<std::string>(cfg, "rate"));
    } catch (const pb::DomainError& e) {
      throw UsageError(e.what());
    }
    out["rate_kind"] = pb::to_string(kind);
    out["rate"] = pb::convergence_rate(kind, get<std::int64_t>(cfg, "n"), get<std::int64_t>(cfg, "m"));
    return out;
  }
  pb::BoundParams p;
  p.n = get<std::int64_t>(cfg, "n");
  p.m = get<std::int64_t>(cfg, "m");
  p.delta = get<double>(cfg, "delta");
  p.eps = get<double>(cfg, "eps");
  p.eps1 = get<double>(cfg, "eps1");
  p.eps2 = get<double>(cfg, "eps2");
  p.third_abs_moment_ratio = get<double>(cfg, "third_abs_moment_ratio");
  p.p_var_dev = get<double>(cfg, "p_var_dev");
  p.C = get<double>(cfg, "C");
  const auto part_name = get<std::string>(cfg, "part");
  if (part_name != "A" && part_name != "B") throw UsageError("--part must be A or B");
  const auto terms = pb::berry_esseen_terms(p, part_name == "A" ? pb::BoundPart::A : pb::BoundPart::B);
  out = pb::to_json(terms);
  out["delta_n_alternate"] = pb::delta_n_alternate(p);
  out["part"] = part_name;
  return out;
}

Json table_rows(const pb::CoverageReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.records) {
    Json* row = nullptr;
    for (auto& existing : rows) {
      if (existing["distribution"] == r.distribution && existing["n"] == r.n) row = &existing;
    }
    if (!row) {
      Json fresh;
      fresh["distribution"] = r.distribution;
      fresh["n"] = r.n;
      rows.push_back(std::move(fresh));
      row = &rows.back();
    }
    (*row)[r.statistic] = r.frequency;
  }
  return rows;
}

pb::SimConfig sim_config_of(const Json& cfg, pb::Model model, std::int64_t n) {
  pb::SimConfig c;
  c.model = model;
  c.n = n;
  c.m = get<std::int64_t>(cfg, "m");
  c.outer = get<std::int64_t>(cfg, "outer");
  c.inner = get<std::int64_t>(cfg, "inner");
  c.threshold = get<double>(cfg, "threshold");
  c.nominal = get<double>(cfg, "nominal");
  c.band = get<double>(cfg, "band");
  c.B = get<int>(cfg, "B");
  try {
    c.conventions = pb::parse_conventions(get<std::string>(cfg, "conventions"));
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
  c.seed = get<std::uint64_t>(cfg, "seed");
  return c;
}

Json run_table(const Json& cfg, unsigned threads) {
  const int which = get<int>(cfg, "which");
  if (which != 1 && which != 2) throw UsageError("--which must be 1 or 2");
  std::vector<pb::TableCell> cells;
  if (get<bool>(cfg, "grid")) {
    cells = which == 1 ? pb::table1_grid() : pb::table2_grid();
  } else {
    cells.push_back({model_of(cfg), get<std::int64_t>(cfg, "n")});
  }
  pb::CoverageReport all;
  all.experiment = which == 1 ? "table1" : "table2";
  all.seed = get<std::uint64_t>(cfg, "seed");
  for (const auto& cell : cells) {
    auto c = sim_config_of(cfg, cell.model, cell.n);
    // Each grid cell gets its own seed so cells are independent of each other.
    if (cells.size() > 1) {
      c.seed = pb::mix64(c.seed ^ pb::hash_tag(pb::to_string(cell.model)) ^ static_cast<std::uint64_t>(cell.n));
    }
    try {
      c.validate();
    } catch (const pb::DomainError& e) {
      throw UsageError(e.what());
    }
    auto rep = which == 1 ? pb::run_table1(c, threads) : pb::run_table2(c, threads);
    for (auto& r : rep.records) all.records.push_back(std::move(r));
  }
  Json out = pb::to_json(all);
  out["rows"] = table_rows(all);
  return out;
}

Json run_coverage_cmd(const Json& cfg, unsigned threads) {
  pb::CoverageConfig c;
  try {
    c.recipe = pb::parse_recipe(get<std::string>(cfg, "recipe"));
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
  c.model = model_of(cfg);
  c.n = get<std::int64_t>(cfg, "n");
  c.m = get<std::int64_t>(cfg, "m");
  c.alpha = get<double>(cfg, "alpha");
  c.reps = get<std::int64_t>(cfg, "reps");
  c.x = get_optional(cfg, "x");
  c.seed = get<std::uint64_t>(cfg, "seed");
  try {
    c.validate();
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
  return pb::to_json(pb::run_coverage(c, threads));
}

Json run_pivotcdf_cmd(const Json& cfg, unsigned threads) {
  pb::PivotCdfConfig c;
  try {
    for (const auto& k : get<std::vector<std::string>>(cfg, "kinds")) c.kinds.push_back(pb::parse_pivot_kind(k));
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
  c.model = model_of(cfg);
  c.n = get<std::int64_t>(cfg, "n");
  c.m = get<std::int64_t>(cfg, "m");
  c.threshold = get<double>(cfg, "threshold");
  c.reps = get<std::int64_t>(cfg, "reps");
  c.x = get_optional(cfg, "x");
  c.seed = get<std::uint64_t>(cfg, "seed");
  try {
    c.validate();
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
  return pb::to_json(pb::run_pivot_cdf(c, threads));
}

Json run_cutoff_cmd(const Json& cfg, unsigned threads) {
  pb::BootstrapCutoffConfig c;
  c.model = model_of(cfg);
  c.n = get<std::int64_t>(cfg, "n");
  c.m = get<std::int64_t>(cfg, "m");
  c.B = get<int>(cfg, "B");
  c.alpha = get<double>(cfg, "alpha");
  const auto rule = get<std::string>(cfg, "rule");
  if (rule != "refined" && rule != "classical") throw UsageError("--rule must be refined or classical");
  c.rule = rule == "refined" ? pb::CutoffRule::Refined : pb::CutoffRule::Classical;
  c.reps = get<std::int64_t>(cfg, "reps");
  c.seed = get<std::uint64_t>(cfg, "seed");
  try {
    c.validate();
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
  return pb::to_json(pb::run_bootstrap_cutoff(c, threads));
}

Json execute(const std::string& command, const Json& cfg, unsigned threads) {
  if (command == "ci") return run_ci(cfg);
  if (command == "weights") return run_weights(cfg);
  if (command == "ydist") return run_ydist(cfg);
  if (command == "bound") return run_bound(cfg);
  if (command == "table") return run_table(cfg, threads);
  if (command == "coverage") return run_coverage_cmd(cfg, threads);
  if (command == "pivotcdf") return run_pivotcdf_cmd(cfg, threads);
  if (command == "cutoff") return run_cutoff_cmd(cfg, threads);
  throw UsageError("unknown command '" + command + "'");
}

// ---- output ---------------------------------------------------------------

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render_text(const std::string& command, const Json& result) {
  std::ostringstream os;
  if (command == "table" || command == "coverage" || command == "pivotcdf" || command == "cutoff") {
    pb::CoverageReport rep;
    rep.experiment = result.at("experiment").get<std::string>();
    for (const auto& r : result.at("records")) {
      pb::CoverageRecord rec;
      rec.distribution = r.at("distribution").get<std::string>();
      rec.n = r.at("n").get<std::int64_t>();
      rec.statistic = r.at("statistic").get<std::string>();
      rec.frequency = r.at("frequency").get<double>();
      rep.records.push_back(std::move(rec));
    }
    os << pb::render_table(rep);
  } else if (command == "ci") {
    os << result.at("recipe").get<std::string>() << " " << result.at("target").get<std::string>() << ": ["
       << pb::format_number(result.at("lo").get<double>()) << ", " << pb::format_number(result.at("hi").get<double>())
       << "]" << (result.at("clamped").get<bool>() ? " (clamped)" : "") << '\n';
  } else {
    for (const auto& [key, value] : result.items()) os << key << ": " << value.dump() << '\n';
  }
  return os.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PIVOTBOOT_SEED"); env && *env) {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw UsageError("PIVOTBOOT_SEED is not an unsigned integer: '" + std::string(s) + "'");
    }
    return v;
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

pb::Model parse_model_flag(const std::string& name) {
  try {
    return pb::parse_model(name);
  } catch (const pb::DomainError& e) {
    throw UsageError(e.what());
  }
}

bool is_randomized(const std::string& command) {
  return command != "ydist" && command != "bound";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstrap pivots, confidence intervals and coverage experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(PIVOTBOOT_VERSION));

  bool as_text = false;
  bool as_json = false;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed_flag;
  auto* json_flag = app.add_flag("--json", as_json, "Emit the JSON report (default)");
  app.add_flag("--text", as_text, "Emit a text rendering of the result")->excludes(json_flag);
  app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it");
  app.add_option("--seed", seed_flag, "RNG seed (fallback: PIVOTBOOT_SEED, then a random seed)");

  Json cfg;
  std::string replay_path;

  // ci
  std::string data_path, weights_path, method = "population";
  std::int64_t ci_m = 0;
  double alpha = 0.1;
  std::optional<double> x;
  auto* ci = app.add_subcommand("ci", "Confidence interval from a data file");
  ci->add_option("data", data_path, "Data file: one number per line, '#' comments")->required();
  ci->add_option("--method", method, "population|sample|finitepop|superpop|ecdf|cdf");
  auto* m_opt = ci->add_option("--m", ci_m, "Draw multinomial weights with this m (default n)");
  ci->add_option("--weights", weights_path, "Weights file, one per data value")->excludes(m_opt);
  ci->add_option("--alpha", alpha, "Two-sided level");
  ci->add_option("--x", x, "Evaluation point for ecdf/cdf");

  // weights
  std::int64_t w_n = 0, w_m = 0;
  auto* weights = app.add_subcommand("weights", "Dump a multinomial weight draw");
  weights->add_option("--n", w_n, "Sample size")->required();
  weights->add_option("--m", w_m, "Resample size (default n)");

  // ydist
  int y_B = 0;
  std::optional<double> y_alpha;
  auto* ydist = app.add_subcommand("ydist", "Law of the number of negative coordinates");
  ydist->add_option("--B", y_B, "Dimension")->required();
  ydist->add_option("--alpha", y_alpha, "Also report y_{1-alpha}");

  // bound
  pb::BoundParams bp;
  std::string part = "A";
  std::optional<std::string> rate;
  auto* bound = app.add_subcommand("bound", "Berry-Esseen type bound or convergence rate");
  bound->add_option("--n", bp.n)->required();
  bound->add_option("--m", bp.m)->required();
  bound->add_option("--delta", bp.delta);
  bound->add_option("--eps", bp.eps);
  bound->add_option("--eps1", bp.eps1);
  bound->add_option("--eps2", bp.eps2);
  bound->add_option("--ratio", bp.third_abs_moment_ratio, "E|X-mu|^3 / sigma^{3/2}");
  bound->add_option("--p", bp.p_var_dev, "P(|S_n^2 - sigma^2| > eps1^2)");
  bound->add_option("--C", bp.C, "Berry-Esseen constant");
  bound->add_option("--part", part, "A (G*) or B (T*)");
  bound->add_option("--rate", rate, "GStarRate|TStarRate|GDoubleStarRate|TDoubleStarRate: print the rate only");

  // table
  int which = 1;
  bool grid = false;
  std::string model_name = "Poisson1";
  pb::SimConfig sim;
  std::optional<double> threshold, nominal;
  std::string conventions = "r";
  auto* table = app.add_subcommand("table", "Coverage-comparison table (1: conditional, 2: joint)");
  table->add_option("--which", which, "1 or 2");
  table->add_flag("--grid", grid, "Run every printed (distribution, n) cell");
  table->add_option("--model", model_name, "Poisson1|Lognormal01|Exponential1|Normal01");
  table->add_option("--n", sim.n);
  table->add_option("--m", sim.m, "Resample size (default n)");
  table->add_option("--outer", sim.outer);
  table->add_option("--inner", sim.inner);
  table->add_option("--threshold", threshold);
  table->add_option("--nominal", nominal);
  table->add_option("--band", sim.band);
  table->add_option("--B", sim.B);
  table->add_option("--conventions", conventions,
                    "r (divisor n-1, plain double band test) or exact (divisor n, inclusive band)");

  // coverage, pivotcdf, cutoff
  std::string recipe = "population", cov_model = "Normal01", rule = "refined";
  std::int64_t cov_n = 200, cov_m = 0, reps = 10000;
  int cut_B = 9;
  double cov_alpha = 0.1, pc_threshold = 1.644854;
  std::optional<double> cov_x;
  std::vector<std::string> kinds{"G*", "T*", "G**", "T**", "alpha1_hat", "alpha2_hat"};
  auto* coverage = app.add_subcommand("coverage", "Joint coverage frequency of an interval recipe");
  coverage->add_option("--recipe", recipe, "population|sample|finitepop|superpop|ecdf|cdf");
  auto* pivotcdf = app.add_subcommand("pivotcdf", "Joint frequency of {pivot <= threshold}");
  pivotcdf->add_option("--kinds", kinds, "Pivot kinds")->delimiter(',');
  pivotcdf->add_option("--threshold", pc_threshold);
  auto* cutoff = app.add_subcommand("cutoff", "Coverage of T_n <= a B-replicate bootstrap cutoff");
  cutoff->add_option("--B", cut_B);
  cutoff->add_option("--rule", rule, "refined|classical");
  for (auto* sub : {coverage, pivotcdf, cutoff}) {
    sub->add_option("--model", cov_model, "Poisson1|Lognormal01|Exponential1|Normal01");
    sub->add_option("--n", cov_n);
    sub->add_option("--m", cov_m, "Resample size (default n)");
    sub->add_option("--reps", reps);
    if (sub != pivotcdf) sub->add_option("--alpha", cov_alpha);
    if (sub != cutoff) sub->add_option("--x", cov_x, "Evaluation point (default: model median)");
  }

  auto* replay = app.add_subcommand("replay", "Re-run the manifest embedded in a JSON report");
  replay->add_option("report", replay_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    Json manifest;
    if (command == "replay") {
      std::ifstream in(replay_path);
      if (!in) throw UsageError("cannot open '" + replay_path + "'");
      Json report;
      try {
        report = Json::parse(in);
        manifest = report.at("manifest");
        command = manifest.at("command").get<std::string>();
        cfg = manifest.at("config");
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(replay_path + ": not a report: " + e.what());
      }
      if (command == "replay") throw UsageError("a replay manifest cannot name replay");
      as_text = false;
    } else {
      std::optional<std::uint64_t> seed;
      if (is_randomized(command)) seed = resolve_seed(seed_flag);
      if (command == "ci") {
        cfg["data"] = data_path;
        cfg["weights"] = weights_path.empty() ? Json() : Json(weights_path);
        cfg["method"] = method;
        cfg["m"] = ci_m;
        cfg["alpha"] = alpha;
        cfg["x"] = x ? Json(*x) : Json();
        cfg["seed"] = *seed;
        if (weights_path.empty() && ci_m == 0) {
          // m defaults to n, which needs the data.
          cfg["m"] = static_cast<std::int64_t>(read_sample(data_path).size());
        }
      } else if (command == "weights") {
        cfg["n"] = w_n;
        cfg["m"] = w_m > 0 ? w_m : w_n;
        cfg["seed"] = *seed;
      } else if (command == "ydist") {
        cfg["B"] = y_B;
        cfg["alpha"] = y_alpha ? Json(*y_alpha) : Json();
      } else if (command == "bound") {
        cfg = pb::to_json(bp);
        cfg["part"] = part;
        cfg["rate"] = rate ? Json(*rate) : Json();
      } else if (command == "table") {
        cfg["which"] = which;
        cfg["grid"] = grid;
        cfg["model"] = grid ? Json() : Json(pb::to_string(parse_model_flag(model_name)));
        cfg["n"] = grid ? Json() : Json(sim.n);
        cfg["m"] = sim.m;
        cfg["outer"] = sim.outer;
        cfg["inner"] = sim.inner;
        const auto defaults = which == 2 ? pb::table2_config(pb::Model::Poisson1, 20, 0)
                                         : pb::table1_config(pb::Model::Poisson1, 20, 0);
        cfg["threshold"] = threshold.value_or(defaults.threshold);
        cfg["nominal"] = nominal.value_or(defaults.nominal);
        cfg["band"] = sim.band;
        cfg["B"] = sim.B;
        cfg["conventions"] = conventions;
        cfg["seed"] = *seed;
      } else {
        cfg["model"] = pb::to_string(parse_model_flag(cov_model));
        cfg["n"] = cov_n;
        cfg["m"] = cov_m;
        cfg["reps"] = reps;
        cfg["seed"] = *seed;
        if (command == "coverage") {
          cfg["recipe"] = recipe;
          cfg["alpha"] = cov_alpha;
          cfg["x"] = cov_x ? Json(*cov_x) : Json();
        } else if (command == "pivotcdf") {
          cfg["kinds"] = kinds;
          cfg["threshold"] = pc_threshold;
          cfg["x"] = cov_x ? Json(*cov_x) : Json();
        } else {
          cfg["B"] = cut_B;
          cfg["alpha"] = cov_alpha;
          cfg["rule"] = rule;
        }
      }
      manifest["command"] = command;
      manifest["config"] = cfg;
      manifest["seed"] = seed ? Json(*seed) : Json();
      manifest["version"] = PIVOTBOOT_VERSION;
      manifest["timestamp"] = utc_timestamp();
    }

    const Json result = execute(command, cfg, threads);
    if (as_text) {
      std::cout << render_text(command, result);
    } else {
      Json report;
      report["manifest"] = manifest;
      report["result"] = result;
      std::cout << report.dump(2) << '\n';
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "pivotboot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Exhausted& e) {
    std::cerr << "pivotboot: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const pb::InadmissibleParams& e) {
    std::cerr << "pivotboot: inadmissible parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pb::Error& e) {
    std::cerr << "pivotboot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "pivotboot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pivotboot: " << e.what() << '\n';
    return kExitUsage;
  }
}
