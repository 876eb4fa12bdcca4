#include "pivotboot/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "pivotboot/normal.hpp"

namespace pivotboot {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

constexpr Model kModels[] = {Model::Poisson1, Model::Lognormal01, Model::Exponential1, Model::Normal01};

}  // namespace

std::string to_string(Model model) {
  switch (model) {
    case Model::Poisson1: return "Poisson1";
    case Model::Lognormal01: return "Lognormal01";
    case Model::Exponential1: return "Exponential1";
    case Model::Normal01: return "Normal01";
  }
  return "unknown";
}

std::string display_name(Model model) {
  switch (model) {
    case Model::Poisson1: return "Poisson(1)";
    case Model::Lognormal01: return "Lognormal(0,1)";
    case Model::Exponential1: return "Exponential(1)";
    case Model::Normal01: return "Normal(0,1)";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  const std::string key = lower(name);
  for (Model m : kModels) {
    if (lower(to_string(m)) == key || lower(display_name(m)) == key) return m;
  }
  throw DomainError("unknown model: " + name);
}

double true_mean(Model model) {
  switch (model) {
    case Model::Poisson1: return 1.0;
    case Model::Lognormal01: return std::exp(0.5);
    case Model::Exponential1: return 1.0;
    case Model::Normal01: return 0.0;
  }
  return 0.0;
}

double true_variance(Model model) {
  switch (model) {
    case Model::Poisson1: return 1.0;
    case Model::Lognormal01: return std::numbers::e * (std::numbers::e - 1.0);
    case Model::Exponential1: return 1.0;
    case Model::Normal01: return 1.0;
  }
  return 0.0;
}

double true_cdf(Model model, double x) {
  switch (model) {
    case Model::Poisson1: {
      if (x < 0.0) return 0.0;
      const auto kmax = static_cast<std::int64_t>(std::floor(x));
      double term = std::exp(-1.0);
      double cdf = term;
      for (std::int64_t k = 1; k <= kmax && term > 0.0; ++k) {
        term /= static_cast<double>(k);
        cdf += term;
      }
      return std::min(cdf, 1.0);
    }
    case Model::Lognormal01: return x <= 0.0 ? 0.0 : normal_cdf(std::log(x));
    case Model::Exponential1: return x <= 0.0 ? 0.0 : -std::expm1(-x);
    case Model::Normal01: return normal_cdf(x);
  }
  return 0.0;
}

double true_median(Model model) {
  switch (model) {
    case Model::Poisson1: return 1.0;
    case Model::Lognormal01: return 1.0;
    case Model::Exponential1: return std::numbers::ln2;
    case Model::Normal01: return 0.0;
  }
  return 0.0;
}

void fill_model(Model model, Eigen::Ref<Vector<double>> out, Stream& stream) {
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    switch (model) {
      case Model::Poisson1: out[i] = static_cast<double>(draw_poisson(1.0, stream)); break;
      case Model::Lognormal01: out[i] = std::exp(draw_standard_normal(stream)); break;
      case Model::Exponential1: out[i] = draw_unit_exponential(stream); break;
      case Model::Normal01: out[i] = draw_standard_normal(stream); break;
    }
  }
}

ModelDraw sample_model(Model model, Eigen::Index n, Stream& stream) {
  if (n < 1) throw DomainError("sample_model: n must be >= 1");
  Vector<double> values(n);
  fill_model(model, values, stream);
  return {Sample<double>(std::move(values)), true_mean(model), true_variance(model)};
}

}  // namespace pivotboot
