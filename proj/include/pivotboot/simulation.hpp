#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pivotboot/models.hpp"
#include "pivotboot/pivots.hpp"

namespace pivotboot {

// Arithmetic conventions for the comparison tables. R is what sd() and `<=`
// give in R: S_n with divisor n - 1 inside G* and T_n, and the band test done
// as a plain double comparison, which drops inner frequencies of exactly
// nominal +/- band (|470/500 - 0.95| evaluates above 0.01). Exact uses the
// divisor-n S_n of the library and an inclusive band.
enum class TableConventions { R, Exact };

std::string to_string(TableConventions conventions);
TableConventions parse_conventions(const std::string& name);

// Design of a coverage-comparison table. Outer cells s = 1..outer each
// produce an inner frequency from inner replicates t = 1..inner; the reported
// number is the fraction of cells whose inner frequency lies within `band` of
// `nominal`.
struct SimConfig {
  Model model = Model::Poisson1;
  std::int64_t n = 20;
  // 0 means m = n.
  std::int64_t m = 0;
  std::int64_t outer = 500;
  std::int64_t inner = 500;
  double threshold = 1.644854;
  double nominal = 0.95;
  double band = 0.01;
  // Bootstrap replicates per inner draw (table 2 only).
  int B = 9;
  TableConventions conventions = TableConventions::R;
  std::uint64_t seed = 0;

  std::int64_t resample_size() const { return m > 0 ? m : n; }
  void validate() const;
};

SimConfig table1_config(Model model, std::int64_t n, std::uint64_t seed);
SimConfig table2_config(Model model, std::int64_t n, std::uint64_t seed);

// The (distribution, n) cells printed in the two comparison tables.
struct TableCell {
  Model model;
  std::int64_t n;
};
std::vector<TableCell> table1_grid();
std::vector<TableCell> table2_grid();

enum class CoverageRecipe { PopulationMean, SampleMean, FinitePopMean, SuperPopMean, Ecdf, Cdf };

std::string to_string(CoverageRecipe recipe);
CoverageRecipe parse_recipe(const std::string& name);

// Joint (data and weights redrawn each replicate) coverage of one interval.
struct CoverageConfig {
  CoverageRecipe recipe = CoverageRecipe::PopulationMean;
  Model model = Model::Normal01;
  std::int64_t n = 200;
  std::int64_t m = 0;
  double alpha = 0.1;
  std::int64_t reps = 10000;
  // Evaluation point for the Ecdf/Cdf recipes; defaults to the model median.
  std::optional<double> x;
  std::uint64_t seed = 0;

  std::int64_t resample_size() const { return m > 0 ? m : n; }
  double eval_point() const { return x ? *x : true_median(model); }
  void validate() const;
};

// Joint frequency of {pivot <= threshold} for several pivots on shared draws.
struct PivotCdfConfig {
  std::vector<PivotKind> kinds;
  Model model = Model::Normal01;
  std::int64_t n = 200;
  std::int64_t m = 0;
  double threshold = 1.644854;
  std::int64_t reps = 10000;
  // Evaluation point for the empirical-process pivots; defaults to the median.
  std::optional<double> x;
  std::uint64_t seed = 0;

  std::int64_t resample_size() const { return m > 0 ? m : n; }
  double eval_point() const { return x ? *x : true_median(model); }
  void validate() const;
};

enum class CutoffRule { Refined, Classical };

// Joint coverage of T_n(X - mu) <= a B-replicate bootstrap cutoff.
struct BootstrapCutoffConfig {
  Model model = Model::Normal01;
  std::int64_t n = 100;
  std::int64_t m = 0;
  int B = 9;
  double alpha = 0.1;
  CutoffRule rule = CutoffRule::Refined;
  std::int64_t reps = 10000;
  std::uint64_t seed = 0;

  std::int64_t resample_size() const { return m > 0 ? m : n; }
  void validate() const;
};

struct CoverageRecord {
  std::string distribution;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string statistic;
  // hits / trials.
  double frequency = 0.0;
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  // Draws excluded or redrawn because a denominator vanished.
  std::int64_t degenerate_count = 0;
  // Data draws attempted (the denominator for degenerate_count).
  std::int64_t total_draws = 0;
  // Table experiments only: average of the inner frequencies over cells.
  std::optional<double> mean_inner_frequency;
};

struct CoverageReport {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<CoverageRecord> records;
};

// `threads` caps worker threads (0 = hardware concurrency); results do not
// depend on it.
CoverageReport run_table1(const SimConfig& cfg, unsigned threads = 1);
CoverageReport run_table2(const SimConfig& cfg, unsigned threads = 1);
CoverageReport run_coverage(const CoverageConfig& cfg, unsigned threads = 1);
CoverageReport run_pivot_cdf(const PivotCdfConfig& cfg, unsigned threads = 1);
CoverageReport run_bootstrap_cutoff(const BootstrapCutoffConfig& cfg, unsigned threads = 1);

// Evaluates any pivot kind. `center` is mu for the mean pivots and F(x) for the
// Alpha2 pivots; it is ignored by kinds that do not take one.
double evaluate_pivot(PivotKind kind, const Sample<double>& s, const WeightVector<double>& w,
                      const CenteredWeights<double>& cw, double center, double x);

}  // namespace pivotboot
