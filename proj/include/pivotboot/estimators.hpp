#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <limits>
#include <span>

#include "pivotboot/errors.hpp"
#include "pivotboot/weights.hpp"

namespace pivotboot {

// Immutable set of observations with cached mean and variance. The variance
// uses divisor n.
template <typename Scalar = double>
class Sample {
 public:
  explicit Sample(Vector<Scalar> values) : values_(std::move(values)) {
    if (values_.size() < 1) throw DomainError("Sample: needs at least one observation");
    mean_ = values_.mean();
    variance_ = (values_.array() - mean_).square().mean();
  }

  Sample(std::initializer_list<Scalar> values)
      : Sample(Eigen::Map<const Vector<Scalar>>(values.begin(),
                                                static_cast<Eigen::Index>(values.size()))) {}

  explicit Sample(std::span<const Scalar> values)
      : Sample(Eigen::Map<const Vector<Scalar>>(values.data(),
                                                static_cast<Eigen::Index>(values.size()))) {}

  const Vector<Scalar>& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Scalar mean() const { return mean_; }
  Scalar variance() const { return variance_; }
  Scalar sd() const { return std::sqrt(variance_); }

  // S_n^2 is indistinguishable from zero at the data's scale.
  bool has_zero_variance() const {
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar scale = values_.cwiseAbs().maxCoeff();
    return !(variance_ > Scalar(16) * eps * eps * scale * scale);
  }

  // The sample of indicators 1(x_i <= x).
  Sample indicators(Scalar x) const {
    return Sample(Vector<Scalar>((values_.array() <= x).template cast<Scalar>().matrix()));
  }

 private:
  Vector<Scalar> values_;
  Scalar mean_;
  Scalar variance_;
};

namespace detail {

template <typename Scalar>
void check_lengths(const Sample<Scalar>& s, Eigen::Index len, const char* who) {
  if (s.size() != len) {
    throw DimensionMismatch(std::string(who) + ": sample has length " + std::to_string(s.size()) +
                            " but weights have length " + std::to_string(len));
  }
}

}  // namespace detail

// X*_m = sum_i w_i x_i / m.
template <typename Scalar>
Scalar bootstrap_mean(const Sample<Scalar>& s, const WeightVector<Scalar>& w) {
  detail::check_lengths(s, w.size(), "bootstrap_mean");
  return w.counts.dot(s.values()) / w.m;
}

// S*^2 = sum_i w_i (x_i - X*_m)^2 / m.
template <typename Scalar>
Scalar bootstrap_variance(const Sample<Scalar>& s, const WeightVector<Scalar>& w) {
  const Scalar xbar = bootstrap_mean(s, w);
  return w.counts.dot((s.values().array() - xbar).square().matrix()) / w.m;
}

// sum |c_i| x_i / sum |c_i|, the weighted estimator of the population mean.
template <typename Scalar>
Scalar weighted_mean_estimator(const Sample<Scalar>& s, const CenteredWeights<Scalar>& cw) {
  detail::check_lengths(s, cw.size(), "weighted_mean_estimator");
  if (!(cw.sum_abs > Scalar(0))) throw DegenerateWeights("weighted_mean_estimator: sum |c_i| = 0");
  return cw.values.cwiseAbs().dot(s.values()) / cw.sum_abs;
}

// F_n(x) = #{x_i <= x} / n.
template <typename Scalar>
Scalar ecdf(const Sample<Scalar>& s, Scalar x) {
  return static_cast<Scalar>((s.values().array() <= x).count()) / static_cast<Scalar>(s.size());
}

// F*(x) = sum_i (w_i / m) 1(x_i <= x).
template <typename Scalar>
Scalar bootstrap_ecdf(const Sample<Scalar>& s, const WeightVector<Scalar>& w, Scalar x) {
  detail::check_lengths(s, w.size(), "bootstrap_ecdf");
  return (s.values().array() <= x).select(w.counts.array(), Scalar(0)).sum() / w.m;
}

}  // namespace pivotboot
