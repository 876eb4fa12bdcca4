#include "pivotboot/rng.hpp"

#include <cmath>
#include <random>

namespace pivotboot {

namespace {

// Inversion by sequential search, Devroye (1986) X.4. Cost grows with the
// mean, so it is only used while trials * p stays small.
std::int64_t binomial_inversion(std::int64_t trials, double p, Stream& stream) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(trials + 1) * s;
  double r = std::pow(q, static_cast<double>(trials));
  double u = stream.uniform();
  std::int64_t x = 0;
  while (u > r) {
    u -= r;
    ++x;
    if (x >= trials) return trials;
    r *= a / static_cast<double>(x) - s;
    if (r <= 0.0) return x;
  }
  return x;
}

constexpr double kInversionMeanLimit = 24.0;

}  // namespace

std::int64_t draw_binomial(std::int64_t trials, double p, Stream& stream) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (p > 0.5) return trials - draw_binomial(trials, 1.0 - p, stream);
  if (static_cast<double>(trials) * p <= kInversionMeanLimit) {
    return binomial_inversion(trials, p, stream);
  }
  std::binomial_distribution<std::int64_t> dist(trials, p);
  return dist(stream);
}

std::int64_t draw_poisson(double lambda, Stream& stream) {
  double p = std::exp(-lambda);
  double cdf = p;
  const double u = stream.uniform();
  std::int64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
    if (p == 0.0) break;
  }
  return k;
}

double draw_standard_normal(Stream& stream) {
  std::normal_distribution<double> dist;
  return dist(stream);
}

double draw_unit_exponential(Stream& stream) { return -std::log(stream.uniform()); }

}  // namespace pivotboot
