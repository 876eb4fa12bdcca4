#pragma once

#include <algorithm>
#include <string>

#include "pivotboot/normal.hpp"
#include "pivotboot/pivots.hpp"

namespace pivotboot {

enum class IntervalTarget { PopulationMean, SampleMean, FinitePopMean, SuperPopMean, EcdfValue, CdfValue };

inline std::string to_string(IntervalTarget target) {
  switch (target) {
    case IntervalTarget::PopulationMean: return "population_mean";
    case IntervalTarget::SampleMean: return "sample_mean";
    case IntervalTarget::FinitePopMean: return "finite_population_mean";
    case IntervalTarget::SuperPopMean: return "super_population_mean";
    case IntervalTarget::EcdfValue: return "ecdf_value";
    case IntervalTarget::CdfValue: return "cdf_value";
  }
  return "unknown";
}

// Closed interval [lo, hi] at confidence level 1 - alpha. `recipe` names the
// construction; `clamped` is set when bounds were cut back into [0, 1].
template <typename Scalar = double>
struct Interval {
  Scalar lo;
  Scalar hi;
  Scalar level;
  IntervalTarget target;
  std::string recipe;
  bool clamped = false;

  bool contains(Scalar v) const { return lo <= v && v <= hi; }
  Scalar center() const { return (lo + hi) / Scalar(2); }
  Scalar width() const { return hi - lo; }
};

namespace detail {

template <typename Scalar>
Interval<Scalar> make_interval(Scalar center, Scalar half_width, Scalar alpha, IntervalTarget target,
                               std::string recipe) {
  return {center - half_width, center + half_width, Scalar(1) - alpha, target, std::move(recipe), false};
}

template <typename Scalar>
Scalar z_half(Scalar alpha) {
  return static_cast<Scalar>(two_sided_critical(static_cast<double>(alpha)));
}

}  // namespace detail

// mu in X*_{n,m} -/+ z_{alpha/2} S_n sqrt(V^2) / sum|c_i|; dual to |G*| <= z.
template <typename Scalar>
Interval<Scalar> ci_population_mean(const Sample<Scalar>& s, const CenteredWeights<Scalar>& cw, Scalar alpha) {
  const Scalar z = detail::z_half(alpha);
  detail::check_lengths(s, cw.size(), "ci_population_mean");
  detail::require_variance(s);
  detail::require_weights(cw);
  const Scalar center = weighted_mean_estimator(s, cw);
  const Scalar half = z * s.sd() * std::sqrt(cw.sum_squares) / cw.sum_abs;
  return detail::make_interval(center, half, alpha, IntervalTarget::PopulationMean, "g_star");
}

// X_n in X*_m -/+ z_{alpha/2} S_n sqrt(V^2); dual to |T*| <= z.
template <typename Scalar>
Interval<Scalar> ci_sample_mean(const Sample<Scalar>& s, const WeightVector<Scalar>& w,
                                const CenteredWeights<Scalar>& cw, Scalar alpha) {
  const Scalar z = detail::z_half(alpha);
  detail::check_lengths(s, cw.size(), "ci_sample_mean");
  detail::require_variance(s);
  detail::require_weights(cw);
  const Scalar half = z * s.sd() * std::sqrt(cw.sum_squares);
  return detail::make_interval(bootstrap_mean(s, w), half, alpha, IntervalTarget::SampleMean, "t_star");
}

// X_N in X*_m -/+ z_{alpha/2} S* sqrt(V^2); dual to |T**| <= z.
template <typename Scalar>
Interval<Scalar> ci_finite_pop_mean(const Sample<Scalar>& s, const WeightVector<Scalar>& w,
                                    const CenteredWeights<Scalar>& cw, Scalar alpha) {
  const Scalar z = detail::z_half(alpha);
  detail::check_lengths(s, cw.size(), "ci_finite_pop_mean");
  const Scalar boot_sd = detail::bootstrap_sd_checked(s, w);
  detail::require_weights(cw);
  const Scalar half = z * boot_sd * std::sqrt(cw.sum_squares);
  return detail::make_interval(bootstrap_mean(s, w), half, alpha, IntervalTarget::FinitePopMean,
                               "t_double_star");
}

// mu in X*_{N,m} -/+ z_{alpha/2} S* sqrt(V^2) / sum|c_i|; dual to |G**| <= z.
template <typename Scalar>
Interval<Scalar> ci_superpop_mean(const Sample<Scalar>& s, const WeightVector<Scalar>& w,
                                  const CenteredWeights<Scalar>& cw, Scalar alpha) {
  const Scalar z = detail::z_half(alpha);
  detail::check_lengths(s, cw.size(), "ci_superpop_mean");
  const Scalar boot_sd = detail::bootstrap_sd_checked(s, w);
  detail::require_weights(cw);
  const Scalar center = weighted_mean_estimator(s, cw);
  const Scalar half = z * boot_sd * std::sqrt(cw.sum_squares) / cw.sum_abs;
  return detail::make_interval(center, half, alpha, IntervalTarget::SuperPopMean, "g_double_star");
}

// Pointwise band for F_n(x) (EcdfValue) or F(x) (CdfValue), centered at F*(x)
// with scale sqrt(F*(1-F*)). Bounds are clamped into [0, 1].
template <typename Scalar>
Interval<Scalar> ci_ecdf(const Sample<Scalar>& s, const WeightVector<Scalar>& w,
                         const CenteredWeights<Scalar>& cw, Scalar x, Scalar alpha, IntervalTarget target) {
  if (target != IntervalTarget::EcdfValue && target != IntervalTarget::CdfValue) {
    throw DomainError("ci_ecdf: target must be EcdfValue or CdfValue");
  }
  const Scalar z = detail::z_half(alpha);
  detail::check_lengths(s, cw.size(), "ci_ecdf");
  detail::require_weights(cw);
  const Scalar f = bootstrap_ecdf(s, w, x);
  const Scalar spread = f * (Scalar(1) - f);
  if (!(spread > Scalar(0))) throw DegenerateScale("ci_ecdf: F*(x) is 0 or 1");
  Scalar half = z * std::sqrt(spread) * std::sqrt(cw.sum_squares);
  if (target == IntervalTarget::CdfValue) {
    if (!(cw.sum_abs > Scalar(0))) throw DegenerateWeights();
    half /= cw.sum_abs;
  }
  auto out = detail::make_interval(f, half, alpha, target,
                                   target == IntervalTarget::EcdfValue ? "alpha1_hathat" : "alpha2_hathat");
  if (out.lo < Scalar(0) || out.hi > Scalar(1)) {
    out.lo = std::clamp(out.lo, Scalar(0), Scalar(1));
    out.hi = std::clamp(out.hi, Scalar(0), Scalar(1));
    out.clamped = true;
  }
  return out;
}

}  // namespace pivotboot
