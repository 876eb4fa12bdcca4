#include "pivotboot/report.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <vector>

namespace pivotboot {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json to_json(const CoverageRecord& record) {
  Json j;
  j["distribution"] = record.distribution;
  j["n"] = record.n;
  j["m"] = record.m;
  j["statistic"] = record.statistic;
  j["frequency"] = record.frequency;
  j["hits"] = record.hits;
  j["trials"] = record.trials;
  j["degenerate_count"] = record.degenerate_count;
  j["total_draws"] = record.total_draws;
  if (record.mean_inner_frequency) j["mean_inner_frequency"] = *record.mean_inner_frequency;
  return j;
}

Json to_json(const CoverageReport& report) {
  Json j;
  j["experiment"] = report.experiment;
  j["seed"] = report.seed;
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  j["records"] = std::move(records);
  return j;
}

Json to_json(const Interval<double>& interval) {
  Json j;
  j["lo"] = interval.lo;
  j["hi"] = interval.hi;
  j["level"] = interval.level;
  j["target"] = to_string(interval.target);
  j["recipe"] = interval.recipe;
  j["clamped"] = interval.clamped;
  return j;
}

Json to_json(const BoundParams& p) {
  Json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["delta"] = p.delta;
  j["eps"] = p.eps;
  j["eps1"] = p.eps1;
  j["eps2"] = p.eps2;
  j["third_abs_moment_ratio"] = p.third_abs_moment_ratio;
  j["p_var_dev"] = p.p_var_dev;
  j["C"] = p.C;
  return j;
}

Json to_json(const BoundTerms& t) {
  Json j;
  j["delta_n"] = t.delta_n;
  j["sixth_moment_term"] = t.sixth_moment_term;
  j["variance_term"] = t.variance_term;
  j["total"] = t.total;
  return j;
}

Json to_json(const SimConfig& cfg) {
  Json j;
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  j["m"] = cfg.resample_size();
  j["outer"] = cfg.outer;
  j["inner"] = cfg.inner;
  j["threshold"] = cfg.threshold;
  j["nominal"] = cfg.nominal;
  j["band"] = cfg.band;
  j["B"] = cfg.B;
  j["conventions"] = to_string(cfg.conventions);
  j["seed"] = cfg.seed;
  return j;
}

Json to_json(const CoverageConfig& cfg) {
  Json j;
  j["recipe"] = to_string(cfg.recipe);
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  j["m"] = cfg.resample_size();
  j["alpha"] = cfg.alpha;
  j["reps"] = cfg.reps;
  if (cfg.recipe == CoverageRecipe::Ecdf || cfg.recipe == CoverageRecipe::Cdf) j["x"] = cfg.eval_point();
  j["seed"] = cfg.seed;
  return j;
}

Json to_json(const PivotCdfConfig& cfg) {
  Json j;
  Json kinds = Json::array();
  for (auto k : cfg.kinds) kinds.push_back(to_string(k));
  j["kinds"] = std::move(kinds);
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  j["m"] = cfg.resample_size();
  j["threshold"] = cfg.threshold;
  j["reps"] = cfg.reps;
  j["x"] = cfg.eval_point();
  j["seed"] = cfg.seed;
  return j;
}

Json to_json(const BootstrapCutoffConfig& cfg) {
  Json j;
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  j["m"] = cfg.resample_size();
  j["B"] = cfg.B;
  j["alpha"] = cfg.alpha;
  j["rule"] = cfg.rule == CutoffRule::Refined ? "refined" : "classical";
  j["reps"] = cfg.reps;
  j["seed"] = cfg.seed;
  return j;
}

std::string render_table(const CoverageReport& report) {
  std::vector<std::string> statistics;
  std::vector<std::pair<std::string, std::int64_t>> rows;
  std::map<std::pair<std::pair<std::string, std::int64_t>, std::string>, std::string> cells;
  for (const auto& r : report.records) {
    if (std::find(statistics.begin(), statistics.end(), r.statistic) == statistics.end()) {
      statistics.push_back(r.statistic);
    }
    std::pair<std::string, std::int64_t> row{r.distribution, r.n};
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    cells[{row, r.statistic}] = format_number(r.frequency);
  }

  std::size_t dist_width = 12;
  for (const auto& row : rows) dist_width = std::max(dist_width, row.first.size());
  std::vector<std::size_t> widths;
  for (const auto& s : statistics) widths.push_back(std::max<std::size_t>(s.size(), 10));

  auto pad = [](const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
  };
  std::string out = pad("distribution", dist_width) + " | " + pad("n", 5);
  for (std::size_t k = 0; k < statistics.size(); ++k) out += " | " + pad(statistics[k], widths[k]);
  out += '\n';
  std::size_t total = out.size() - 1;
  out += std::string(total, '-') + '\n';
  for (const auto& row : rows) {
    out += pad(row.first, dist_width) + " | " + pad(std::to_string(row.second), 5);
    for (std::size_t k = 0; k < statistics.size(); ++k) {
      const auto it = cells.find({row, statistics[k]});
      out += " | " + pad(it == cells.end() ? "" : it->second, widths[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace pivotboot
