#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pivotboot/errors.hpp"
#include "pivotboot/rng.hpp"

namespace pivotboot {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class WeightScheme { Multinomial, IidPositive };

inline std::string to_string(WeightScheme scheme) {
  return scheme == WeightScheme::Multinomial ? "multinomial" : "iid_positive";
}

// Resampling counts w_1..w_n with m = sum of counts. Multinomial counts are
// integers stored exactly in Scalar.
template <typename Scalar = double>
struct WeightVector {
  Vector<Scalar> counts;
  Scalar m = Scalar(0);
  WeightScheme scheme = WeightScheme::Multinomial;

  Eigen::Index size() const { return counts.size(); }
};

// values_i = w_i / m - 1/n, with V^2 = sum values_i^2 and sum_abs = sum |values_i|.
template <typename Scalar = double>
struct CenteredWeights {
  Vector<Scalar> values;
  Scalar sum_squares = Scalar(0);
  Scalar sum_abs = Scalar(0);

  Eigen::Index size() const { return values.size(); }
};

namespace detail {

// V^2 below this is treated as exactly zero. Equal counts give exact zeros in
// floating point, so this only absorbs rounding in generalized weights.
template <typename Scalar>
bool is_degenerate(const CenteredWeights<Scalar>& cw) {
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar n = static_cast<Scalar>(cw.size());
  return !(cw.sum_squares > Scalar(16) * eps * eps / n);
}

}  // namespace detail

// multinomial(m; 1/n, ..., 1/n) via conditional binomials:
// w_1 ~ Bin(m, 1/n), w_2 ~ Bin(m - w_1, 1/(n-1)), ...
template <typename Scalar = double>
WeightVector<Scalar> draw_multinomial_weights(Eigen::Index n, std::int64_t m, Stream& stream) {
  if (n < 1) throw DomainError("draw_multinomial_weights: n must be >= 1");
  if (m < 1) throw DomainError("draw_multinomial_weights: m must be >= 1");
  WeightVector<Scalar> w;
  w.counts = Vector<Scalar>::Zero(n);
  w.m = static_cast<Scalar>(m);
  w.scheme = WeightScheme::Multinomial;
  std::int64_t remaining = m;
  for (Eigen::Index i = 0; i + 1 < n && remaining > 0; ++i) {
    const double p = 1.0 / static_cast<double>(n - i);
    const std::int64_t k = draw_binomial(remaining, p, stream);
    w.counts[i] = static_cast<Scalar>(k);
    remaining -= k;
  }
  if (remaining > 0) w.counts[n - 1] = static_cast<Scalar>(remaining);
  return w;
}

// Unit-exponential weights, the Bayesian-bootstrap case.
struct UnitExponential {
  double operator()(Stream& stream) const { return draw_unit_exponential(stream); }
};

// n i.i.d. draws from `generator`, a callable double(Stream&) producing
// positive values. Nonpositive draws are discarded and redrawn; a generator
// that yields 1000 nonpositive values in a row is rejected with DomainError.
template <typename Scalar = double, typename Generator = UnitExponential>
WeightVector<Scalar> draw_generalized_weights(Eigen::Index n, Generator generator, Stream& stream) {
  if (n < 1) throw DomainError("draw_generalized_weights: n must be >= 1");
  constexpr int kMaxRejections = 1000;
  WeightVector<Scalar> w;
  w.counts.resize(n);
  w.scheme = WeightScheme::IidPositive;
  for (Eigen::Index i = 0; i < n; ++i) {
    int rejections = 0;
    Scalar v = static_cast<Scalar>(generator(stream));
    while (!(v > Scalar(0))) {
      if (++rejections >= kMaxRejections) {
        throw DomainError("draw_generalized_weights: generator does not produce positive values");
      }
      v = static_cast<Scalar>(generator(stream));
    }
    w.counts[i] = v;
  }
  w.m = w.counts.sum();
  return w;
}

template <typename Scalar>
CenteredWeights<Scalar> center(const WeightVector<Scalar>& w, Eigen::Index n) {
  if (n < 1) throw DomainError("center: n must be >= 1");
  if (w.size() != n) {
    throw DimensionMismatch("center: weight vector has length " + std::to_string(w.size()) +
                            ", expected " + std::to_string(n));
  }
  if (!(w.m > Scalar(0))) throw DomainError("center: resample size must be positive");
  CenteredWeights<Scalar> cw;
  cw.values = (w.counts.array() / w.m - Scalar(1) / static_cast<Scalar>(n)).matrix();
  cw.sum_squares = cw.values.squaredNorm();
  cw.sum_abs = cw.values.template lpNorm<1>();
  return cw;
}

template <typename Scalar>
CenteredWeights<Scalar> center(const WeightVector<Scalar>& w) {
  return center(w, w.size());
}

// M_n = max_i c_i^2 / V^2, the negligibility diagnostic for the weights.
template <typename Scalar>
Scalar max_ratio(const CenteredWeights<Scalar>& cw) {
  if (detail::is_degenerate(cw)) throw DegenerateWeights("max_ratio: V^2 = 0");
  return cw.values.array().square().maxCoeff() / cw.sum_squares;
}

// E_w sum_i (w_i/m - 1/n)^2 for multinomial weights.
inline double expected_sum_squares(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw DomainError("expected_sum_squares: n, m must be >= 1");
  return (1.0 - 1.0 / static_cast<double>(n)) / static_cast<double>(m);
}

// 15 m^3/n^3 + 25 m^2/n^2 + m/n, the sixth-moment expression for w_1 - m/n
// that enters the Berry-Esseen bound.
inline double sixth_moment_expression(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw DomainError("sixth_moment_expression: n, m must be >= 1");
  const double r = static_cast<double>(m) / static_cast<double>(n);
  return 15.0 * r * r * r + 25.0 * r * r + r;
}

}  // namespace pivotboot
