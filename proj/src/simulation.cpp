#include "pivotboot/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pivotboot/errors.hpp"
#include "pivotboot/intervals.hpp"
#include "pivotboot/multi_bootstrap.hpp"

namespace pivotboot {

namespace {

constexpr double kBandSlack = 1e-12;
constexpr std::int64_t kRepsPerTask = 250;
constexpr int kMaxWeightRedraws = 1000;

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// independent, so the assignment of indices to workers does not matter.
template <typename Body>
void parallel_for(std::int64_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::int64_t>(threads, count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::int64_t i = next++; i < count; i = next++) body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned k = 0; k < workers; ++k) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Draws multinomial weights, redrawing degenerate ones and counting them.
struct DrawnWeights {
  WeightVector<double> w;
  CenteredWeights<double> cw;
};

DrawnWeights draw_nondegenerate(Eigen::Index n, std::int64_t m, Stream& stream, std::int64_t& redraws) {
  for (int attempt = 0; attempt < kMaxWeightRedraws; ++attempt) {
    auto w = draw_multinomial_weights<double>(n, m, stream);
    auto cw = center(w, n);
    if (!detail::is_degenerate(cw)) return {std::move(w), std::move(cw)};
    ++redraws;
  }
  throw DegenerateWeights("weights degenerate after repeated redraws");
}

bool within_band(double frequency, const SimConfig& cfg) {
  const double slack = cfg.conventions == TableConventions::Exact ? kBandSlack : 0.0;
  return std::abs(frequency - cfg.nominal) <= cfg.band + slack;
}

// Factor turning a divisor-n studentized statistic into its divisor-(n - 1) form.
double studentize_factor(const SimConfig& cfg) {
  if (cfg.conventions == TableConventions::Exact) return 1.0;
  const auto n = static_cast<double>(cfg.n);
  return std::sqrt((n - 1.0) / n);
}

void check_common(std::int64_t n, std::int64_t m, std::int64_t reps, const char* who) {
  const std::string name(who);
  if (n < 2) throw DomainError(name + ": n must be >= 2");
  if (m < 0) throw DomainError(name + ": m must be positive");
  if (reps < 1) throw DomainError(name + ": replicate count must be positive");
}

struct Counts {
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  std::int64_t degenerate = 0;
  std::int64_t draws = 0;
};

CoverageRecord make_record(Model model, std::int64_t n, std::int64_t m, std::string statistic,
                           const Counts& c) {
  CoverageRecord r;
  r.distribution = to_string(model);
  r.n = n;
  r.m = m;
  r.statistic = std::move(statistic);
  r.hits = c.hits;
  r.trials = c.trials;
  r.frequency = c.trials > 0 ? static_cast<double>(c.hits) / static_cast<double>(c.trials) : 0.0;
  r.degenerate_count = c.degenerate;
  r.total_draws = c.draws;
  return r;
}

// Per outer cell: inner hit counts for each statistic.
struct CellCounts {
  std::vector<std::int64_t> hits;
  std::int64_t trials = 0;
  std::int64_t degenerate = 0;
  std::int64_t draws = 0;
};

CoverageReport summarize_cells(const std::string& experiment, const SimConfig& cfg,
                               const std::vector<std::string>& names, const std::vector<CellCounts>& cells) {
  CoverageReport report;
  report.experiment = experiment;
  report.seed = cfg.seed;
  for (std::size_t k = 0; k < names.size(); ++k) {
    Counts c;
    double inner_sum = 0.0;
    for (const auto& cell : cells) {
      c.degenerate += cell.degenerate;
      c.draws += cell.draws;
      ++c.trials;
      if (cell.trials == 0) continue;
      const double inner = static_cast<double>(cell.hits[k]) / static_cast<double>(cell.trials);
      inner_sum += inner;
      if (within_band(inner, cfg)) ++c.hits;
    }
    auto rec = make_record(cfg.model, cfg.n, cfg.resample_size(), names[k], c);
    rec.mean_inner_frequency = inner_sum / static_cast<double>(cells.size());
    report.records.push_back(std::move(rec));
  }
  return report;
}

// Joint replicate loop shared by the flat experiments: `count` replicates are
// cut into fixed-size tasks whose counts are summed in task order.
template <typename PerRep>
std::vector<Counts> run_flat(std::int64_t reps, std::size_t statistics, unsigned threads, PerRep&& per_rep) {
  const std::int64_t tasks = (reps + kRepsPerTask - 1) / kRepsPerTask;
  std::vector<std::vector<Counts>> partial(static_cast<std::size_t>(tasks), std::vector<Counts>(statistics));
  parallel_for(tasks, threads, [&](std::int64_t task) {
    auto& out = partial[static_cast<std::size_t>(task)];
    const std::int64_t end = std::min(reps, (task + 1) * kRepsPerTask);
    for (std::int64_t r = task * kRepsPerTask; r < end; ++r) per_rep(r, out);
  });
  std::vector<Counts> total(statistics);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < statistics; ++k) {
      total[k].hits += p[k].hits;
      total[k].trials += p[k].trials;
      total[k].degenerate += p[k].degenerate;
      total[k].draws += p[k].draws;
    }
  }
  return total;
}

Sample<double> draw_data(Model model, std::int64_t n, Stream stream) {
  Vector<double> values(n);
  fill_model(model, values, stream);
  return Sample<double>(std::move(values));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

void SimConfig::validate() const {
  check_common(n, m, outer, "SimConfig");
  if (inner < 1) throw DomainError("SimConfig: inner must be positive");
  if (!(band > 0.0)) throw DomainError("SimConfig: band must be positive");
  if (!(nominal > 0.0 && nominal < 1.0)) throw DomainError("SimConfig: nominal must lie in (0, 1)");
  if (!std::isfinite(threshold)) throw DomainError("SimConfig: threshold must be finite");
  if (B < 2) throw DomainError("SimConfig: B must be >= 2");
}

SimConfig table1_config(Model model, std::int64_t n, std::uint64_t seed) {
  SimConfig cfg;
  cfg.model = model;
  cfg.n = n;
  cfg.seed = seed;
  return cfg;
}

SimConfig table2_config(Model model, std::int64_t n, std::uint64_t seed) {
  SimConfig cfg = table1_config(model, n, seed);
  cfg.threshold = 1.281648;
  cfg.nominal = 0.9000169;
  cfg.B = 9;
  return cfg;
}

std::string to_string(TableConventions conventions) {
  return conventions == TableConventions::R ? "r" : "exact";
}

TableConventions parse_conventions(const std::string& name) {
  const std::string key = lower(name);
  if (key == "r") return TableConventions::R;
  if (key == "exact") return TableConventions::Exact;
  throw DomainError("unknown table conventions '" + name + "'");
}

std::vector<TableCell> table1_grid() {
  return {{Model::Poisson1, 20},     {Model::Poisson1, 30},     {Model::Poisson1, 40},
          {Model::Lognormal01, 20},  {Model::Lognormal01, 30},  {Model::Lognormal01, 40},
          {Model::Exponential1, 20}, {Model::Exponential1, 30}, {Model::Exponential1, 50}};
}

std::vector<TableCell> table2_grid() {
  return {{Model::Poisson1, 20},     {Model::Poisson1, 30},     {Model::Poisson1, 40},
          {Model::Lognormal01, 20},  {Model::Lognormal01, 30},  {Model::Lognormal01, 40},
          {Model::Exponential1, 20}, {Model::Exponential1, 30}, {Model::Exponential1, 40}};
}

std::string to_string(CoverageRecipe recipe) {
  switch (recipe) {
    case CoverageRecipe::PopulationMean: return "population";
    case CoverageRecipe::SampleMean: return "sample";
    case CoverageRecipe::FinitePopMean: return "finitepop";
    case CoverageRecipe::SuperPopMean: return "superpop";
    case CoverageRecipe::Ecdf: return "ecdf";
    case CoverageRecipe::Cdf: return "cdf";
  }
  return "unknown";
}

CoverageRecipe parse_recipe(const std::string& name) {
  const std::string key = lower(name);
  for (auto r : {CoverageRecipe::PopulationMean, CoverageRecipe::SampleMean, CoverageRecipe::FinitePopMean,
                 CoverageRecipe::SuperPopMean, CoverageRecipe::Ecdf, CoverageRecipe::Cdf}) {
    if (key == to_string(r)) return r;
  }
  throw DomainError("unknown interval recipe '" + name + "'");
}

void CoverageConfig::validate() const {
  check_common(n, m, reps, "CoverageConfig");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("CoverageConfig: alpha must lie in (0, 1)");
}

void PivotCdfConfig::validate() const {
  check_common(n, m, reps, "PivotCdfConfig");
  if (kinds.empty()) throw DomainError("PivotCdfConfig: no pivot kinds");
  if (!std::isfinite(threshold)) throw DomainError("PivotCdfConfig: threshold must be finite");
}

void BootstrapCutoffConfig::validate() const {
  check_common(n, m, reps, "BootstrapCutoffConfig");
  if (B < 2) throw DomainError("BootstrapCutoffConfig: B must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("BootstrapCutoffConfig: alpha must lie in (0, 1)");
}

double evaluate_pivot(PivotKind kind, const Sample<double>& s, const WeightVector<double>& w,
                      const CenteredWeights<double>& cw, double center, double x) {
  switch (kind) {
    case PivotKind::StudentT: return student_t(s, center);
    case PivotKind::TStar: return t_star(s, cw);
    case PivotKind::GStar: return g_star(s, cw, center);
    case PivotKind::TDoubleStar:
    case PivotKind::TTilde: return starred_variant(kind, s, w, cw);
    case PivotKind::GDoubleStar:
    case PivotKind::GTilde: return starred_variant(kind, s, w, cw, std::optional<double>(center));
    case PivotKind::Alpha1Hat:
    case PivotKind::Alpha1HatHat: return empirical_pivot(kind, s, w, cw, x);
    case PivotKind::Alpha2Hat:
    case PivotKind::Alpha2HatHat: return empirical_pivot(kind, s, w, cw, x, std::optional<double>(center));
  }
  throw DomainError("evaluate_pivot: unknown kind");
}

CoverageReport run_table1(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  const Stream root(cfg.seed);
  const double mu = true_mean(cfg.model);
  const std::int64_t m = cfg.resample_size();
  const double factor = studentize_factor(cfg);
  std::vector<CellCounts> cells(static_cast<std::size_t>(cfg.outer));

  parallel_for(cfg.outer, threads, [&](std::int64_t s) {
    CellCounts& cell = cells[static_cast<std::size_t>(s)];
    cell.hits.assign(2, 0);
    Stream ws = root.split("table1/weights", static_cast<std::uint64_t>(s));
    const auto [w, cw] = draw_nondegenerate(cfg.n, m, ws, cell.degenerate);
    const Stream data_root = root.split("table1/data", static_cast<std::uint64_t>(s));
    for (std::int64_t t = 0; t < cfg.inner; ++t) {
      ++cell.draws;
      const auto smp = draw_data(cfg.model, cfg.n, data_root.split("inner", static_cast<std::uint64_t>(t)));
      if (smp.has_zero_variance()) {
        ++cell.degenerate;
        continue;
      }
      ++cell.trials;
      if (factor * g_star(smp, cw, mu) <= cfg.threshold) ++cell.hits[0];
      if (factor * student_t(smp, mu) <= cfg.threshold) ++cell.hits[1];
    }
  });
  return summarize_cells("table1", cfg, {"emp_G_star", "emp_T"}, cells);
}

CoverageReport run_table2(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  const Stream root(cfg.seed);
  const double mu = true_mean(cfg.model);
  const std::int64_t m = cfg.resample_size();
  const double factor = studentize_factor(cfg);
  std::vector<CellCounts> cells(static_cast<std::size_t>(cfg.outer));

  parallel_for(cfg.outer, threads, [&](std::int64_t s) {
    CellCounts& cell = cells[static_cast<std::size_t>(s)];
    cell.hits.assign(3, 0);
    const Stream cell_root = root.split("table2", static_cast<std::uint64_t>(s));
    for (std::int64_t t = 0; t < cfg.inner; ++t) {
      ++cell.draws;
      const Stream base = cell_root.split("inner", static_cast<std::uint64_t>(t));
      const auto smp = draw_data(cfg.model, cfg.n, base.split("data"));
      if (smp.has_zero_variance()) {
        ++cell.degenerate;
        continue;
      }
      ++cell.trials;
      Stream gs = base.split("gstar");
      const auto drawn = draw_nondegenerate(cfg.n, m, gs, cell.degenerate);
      const auto reps = draw_replicates(smp, cfg.B, m, base.split("boot"));
      cell.degenerate += reps.redraws;
      const double tn = student_t(smp, mu);
      // The bootstrap comparison is scale free, so the divisor does not enter it.
      if (factor * g_star(smp, drawn.cw, mu) <= cfg.threshold) ++cell.hits[0];
      if (factor * tn <= cfg.threshold) ++cell.hits[1];
      if (tn <= *std::max_element(reps.values.begin(), reps.values.end())) ++cell.hits[2];
    }
  });
  return summarize_cells("table2", cfg, {"emp_G_star", "emp_T", "emp_Boot"}, cells);
}

CoverageReport run_coverage(const CoverageConfig& cfg, unsigned threads) {
  cfg.validate();
  const Stream root(cfg.seed);
  const double mu = true_mean(cfg.model);
  const double x = cfg.eval_point();
  const double alpha = cfg.alpha;
  const std::int64_t m = cfg.resample_size();

  auto totals = run_flat(cfg.reps, 1, threads, [&](std::int64_t r, std::vector<Counts>& out) {
    Counts& c = out[0];
    ++c.draws;
    const Stream base = root.split("coverage", static_cast<std::uint64_t>(r));
    const auto smp = draw_data(cfg.model, cfg.n, base.split("data"));
    Stream ws = base.split("weights");
    const auto [w, cw] = draw_nondegenerate(cfg.n, m, ws, c.degenerate);
    try {
      bool hit = false;
      switch (cfg.recipe) {
        case CoverageRecipe::PopulationMean: hit = ci_population_mean(smp, cw, alpha).contains(mu); break;
        case CoverageRecipe::SampleMean: hit = ci_sample_mean(smp, w, cw, alpha).contains(smp.mean()); break;
        case CoverageRecipe::FinitePopMean:
          hit = ci_finite_pop_mean(smp, w, cw, alpha).contains(smp.mean());
          break;
        case CoverageRecipe::SuperPopMean: hit = ci_superpop_mean(smp, w, cw, alpha).contains(mu); break;
        case CoverageRecipe::Ecdf:
          hit = ci_ecdf(smp, w, cw, x, alpha, IntervalTarget::EcdfValue).contains(ecdf(smp, x));
          break;
        case CoverageRecipe::Cdf:
          hit = ci_ecdf(smp, w, cw, x, alpha, IntervalTarget::CdfValue).contains(true_cdf(cfg.model, x));
          break;
      }
      ++c.trials;
      if (hit) ++c.hits;
    } catch (const ZeroVariance&) {
      ++c.degenerate;
    } catch (const ZeroBootstrapVariance&) {
      ++c.degenerate;
    } catch (const DegenerateScale&) {
      ++c.degenerate;
    }
  });

  CoverageReport report;
  report.experiment = "coverage";
  report.seed = cfg.seed;
  report.records.push_back(make_record(cfg.model, cfg.n, m, to_string(cfg.recipe), totals[0]));
  return report;
}

CoverageReport run_pivot_cdf(const PivotCdfConfig& cfg, unsigned threads) {
  cfg.validate();
  const Stream root(cfg.seed);
  const double mu = true_mean(cfg.model);
  const double x = cfg.eval_point();
  const double f_true = true_cdf(cfg.model, x);
  const std::int64_t m = cfg.resample_size();
  const std::size_t k_count = cfg.kinds.size();

  auto totals = run_flat(cfg.reps, k_count, threads, [&](std::int64_t r, std::vector<Counts>& out) {
    const Stream base = root.split("pivot_cdf", static_cast<std::uint64_t>(r));
    const auto smp = draw_data(cfg.model, cfg.n, base.split("data"));
    Stream ws = base.split("weights");
    std::int64_t redraws = 0;
    const auto [w, cw] = draw_nondegenerate(cfg.n, m, ws, redraws);
    for (std::size_t k = 0; k < k_count; ++k) {
      const PivotKind kind = cfg.kinds[k];
      Counts& c = out[k];
      ++c.draws;
      c.degenerate += redraws;
      const bool empirical = kind == PivotKind::Alpha1Hat || kind == PivotKind::Alpha1HatHat ||
                             kind == PivotKind::Alpha2Hat || kind == PivotKind::Alpha2HatHat;
      try {
        const double value = evaluate_pivot(kind, smp, w, cw, empirical ? f_true : mu, x);
        ++c.trials;
        if (value <= cfg.threshold) ++c.hits;
      } catch (const ZeroVariance&) {
        ++c.degenerate;
      } catch (const ZeroBootstrapVariance&) {
        ++c.degenerate;
      } catch (const DegenerateScale&) {
        ++c.degenerate;
      }
    }
  });

  CoverageReport report;
  report.experiment = "pivot_cdf";
  report.seed = cfg.seed;
  for (std::size_t k = 0; k < k_count; ++k) {
    report.records.push_back(make_record(cfg.model, cfg.n, m, to_string(cfg.kinds[k]), totals[k]));
  }
  return report;
}

CoverageReport run_bootstrap_cutoff(const BootstrapCutoffConfig& cfg, unsigned threads) {
  cfg.validate();
  const Stream root(cfg.seed);
  const double mu = true_mean(cfg.model);
  const std::int64_t m = cfg.resample_size();
  if (cfg.rule == CutoffRule::Classical) classical_cutoff_rank(cfg.B, cfg.alpha);

  auto totals = run_flat(cfg.reps, 1, threads, [&](std::int64_t r, std::vector<Counts>& out) {
    Counts& c = out[0];
    ++c.draws;
    const Stream base = root.split("bootstrap_cutoff", static_cast<std::uint64_t>(r));
    const auto smp = draw_data(cfg.model, cfg.n, base.split("data"));
    if (smp.has_zero_variance()) {
      ++c.degenerate;
      return;
    }
    const auto reps = draw_replicates(smp, cfg.B, m, base.split("boot"));
    c.degenerate += reps.redraws;
    const double tn = student_t(smp, mu);
    const bool hit = cfg.rule == CutoffRule::Refined ? refined_contains(tn, reps, cfg.alpha)
                                                     : classical_contains(tn, reps, cfg.alpha);
    ++c.trials;
    if (hit) ++c.hits;
  });

  CoverageReport report;
  report.experiment = "bootstrap_cutoff";
  report.seed = cfg.seed;
  report.records.push_back(make_record(cfg.model, cfg.n, m,
                                       cfg.rule == CutoffRule::Refined ? "refined" : "classical", totals[0]));
  return report;
}

}  // namespace pivotboot
