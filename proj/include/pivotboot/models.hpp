#pragma once

#include <string>

#include "pivotboot/estimators.hpp"
#include "pivotboot/rng.hpp"

namespace pivotboot {

enum class Model { Poisson1, Lognormal01, Exponential1, Normal01 };

// Identifier used in configs and JSON, e.g. "Poisson1".
std::string to_string(Model model);
// Table label, e.g. "Poisson(1)".
std::string display_name(Model model);
// Accepts the identifier or the label, case-insensitively.
Model parse_model(const std::string& name);

double true_mean(Model model);
double true_variance(Model model);
double true_cdf(Model model, double x);
// Smallest x with F(x) >= 1/2. Only the continuous models have F(x) = 1/2
// there; for Poisson(1) this is 1, where F = 2/e.
double true_median(Model model);

struct ModelDraw {
  Sample<double> sample;
  double mu;
  double sigma2;
};

// n i.i.d. draws from `model` with its true mean and variance attached.
ModelDraw sample_model(Model model, Eigen::Index n, Stream& stream);

// The values only, for hot loops that reuse a buffer.
void fill_model(Model model, Eigen::Ref<Vector<double>> out, Stream& stream);

}  // namespace pivotboot
