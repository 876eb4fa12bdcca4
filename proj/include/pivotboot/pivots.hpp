#pragma once

#include <cmath>
#include <iterator>
#include <optional>
#include <string>

#include "pivotboot/estimators.hpp"

namespace pivotboot {

enum class PivotKind {
  StudentT,
  TStar,
  GStar,
  TDoubleStar,
  GDoubleStar,
  TTilde,
  GTilde,
  Alpha1Hat,
  Alpha1HatHat,
  Alpha2Hat,
  Alpha2HatHat,
};

inline std::string to_string(PivotKind kind) {
  switch (kind) {
    case PivotKind::StudentT: return "T_n";
    case PivotKind::TStar: return "T*";
    case PivotKind::GStar: return "G*";
    case PivotKind::TDoubleStar: return "T**";
    case PivotKind::GDoubleStar: return "G**";
    case PivotKind::TTilde: return "T~**";
    case PivotKind::GTilde: return "G~**";
    case PivotKind::Alpha1Hat: return "alpha1_hat";
    case PivotKind::Alpha1HatHat: return "alpha1_hathat";
    case PivotKind::Alpha2Hat: return "alpha2_hat";
    case PivotKind::Alpha2HatHat: return "alpha2_hathat";
  }
  return "unknown";
}

// Accepts the to_string names and the spelled-out forms (t_star, g_double_star,
// g_tilde, ...).
inline PivotKind parse_pivot_kind(const std::string& name) {
  static constexpr PivotKind all[] = {
      PivotKind::StudentT,  PivotKind::TStar,        PivotKind::GStar,     PivotKind::TDoubleStar,
      PivotKind::GDoubleStar, PivotKind::TTilde,     PivotKind::GTilde,    PivotKind::Alpha1Hat,
      PivotKind::Alpha1HatHat, PivotKind::Alpha2Hat, PivotKind::Alpha2HatHat};
  static constexpr const char* spelled[] = {"t_n",    "t_star",  "g_star", "t_double_star",
                                            "g_double_star", "t_tilde", "g_tilde", "alpha1_hat",
                                            "alpha1_hathat", "alpha2_hat", "alpha2_hathat"};
  for (std::size_t i = 0; i < std::size(all); ++i) {
    if (name == to_string(all[i]) || name == spelled[i]) return all[i];
  }
  throw DomainError("unknown pivot kind '" + name + "'");
}

// Kinds centered at a caller-supplied mu (or F(x)); the others are centered
// by the data themselves.
constexpr bool needs_center(PivotKind kind) {
  return kind == PivotKind::StudentT || kind == PivotKind::GStar ||
         kind == PivotKind::GDoubleStar || kind == PivotKind::GTilde ||
         kind == PivotKind::Alpha2Hat || kind == PivotKind::Alpha2HatHat;
}

// Scale used for the weight norm in the empirical-process pivots. OneOverSqrtM
// substitutes 1/sqrt(m) for sqrt(V^2).
enum class EmpiricalScale { WeightNorm, OneOverSqrtM };

namespace detail {

template <typename Scalar>
void require_weights(const CenteredWeights<Scalar>& cw) {
  if (is_degenerate(cw)) throw DegenerateWeights();
}

template <typename Scalar>
void require_variance(const Sample<Scalar>& s) {
  if (s.has_zero_variance()) throw ZeroVariance();
}

template <typename Scalar>
Scalar bootstrap_sd_checked(const Sample<Scalar>& s, const WeightVector<Scalar>& w) {
  const Scalar v = bootstrap_variance(s, w);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar scale = s.values().cwiseAbs().maxCoeff();
  if (!(v > Scalar(16) * eps * eps * scale * scale)) throw ZeroBootstrapVariance();
  return std::sqrt(v);
}

// sum c_i x_i, evaluated on centered data so it is exactly location invariant
// up to rounding.
template <typename Scalar>
Scalar signed_numerator(const Sample<Scalar>& s, const CenteredWeights<Scalar>& cw) {
  return cw.values.dot((s.values().array() - s.mean()).matrix());
}

// sum |c_i| (x_i - mu).
template <typename Scalar>
Scalar absolute_numerator(const Sample<Scalar>& s, const CenteredWeights<Scalar>& cw, Scalar mu) {
  return cw.values.cwiseAbs().dot((s.values().array() - mu).matrix());
}

}  // namespace detail

// (X_n - mu) / (S_n / sqrt(n)); mu = 0 gives the Student t-statistic.
template <typename Scalar>
Scalar student_t(const Sample<Scalar>& s, Scalar mu) {
  if (s.size() < 2) throw DomainError("student_t: needs n >= 2");
  detail::require_variance(s);
  return (s.mean() - mu) / (s.sd() / std::sqrt(static_cast<Scalar>(s.size())));
}

// G* = sum |c_i| (x_i - mu) / (S_n sqrt(V^2)), the pivot for the population mean.
template <typename Scalar>
Scalar g_star(const Sample<Scalar>& s, const CenteredWeights<Scalar>& cw, Scalar mu) {
  detail::check_lengths(s, cw.size(), "g_star");
  detail::require_variance(s);
  detail::require_weights(cw);
  return detail::absolute_numerator(s, cw, mu) / (s.sd() * std::sqrt(cw.sum_squares));
}

// T* = sum c_i x_i / (S_n sqrt(V^2)) = (X*_m - X_n) / (S_n sqrt(V^2)), the pivot
// for the sample mean.
template <typename Scalar>
Scalar t_star(const Sample<Scalar>& s, const CenteredWeights<Scalar>& cw) {
  detail::check_lengths(s, cw.size(), "t_star");
  detail::require_variance(s);
  detail::require_weights(cw);
  return detail::signed_numerator(s, cw) / (s.sd() * std::sqrt(cw.sum_squares));
}

// The S*-scaled forms:
//   TDoubleStar  sum c_i x_i        / (S* sqrt(V^2))
//   GDoubleStar  sum |c_i|(x_i - mu) / (S* sqrt(V^2))
//   TTilde       sum c_i x_i        / (S* / sqrt(m))
//   GTilde       sum |c_i|(x_i - mu) / (S* / sqrt(m))
template <typename Scalar>
Scalar starred_variant(PivotKind kind, const Sample<Scalar>& s, const WeightVector<Scalar>& w,
                       const CenteredWeights<Scalar>& cw, std::optional<Scalar> mu = std::nullopt) {
  const bool g_form = kind == PivotKind::GDoubleStar || kind == PivotKind::GTilde;
  const bool t_form = kind == PivotKind::TDoubleStar || kind == PivotKind::TTilde;
  if (!g_form && !t_form) throw DomainError("starred_variant: unsupported kind " + to_string(kind));
  if (g_form && !mu) throw MuArityError(to_string(kind) + " requires mu");
  if (t_form && mu) throw MuArityError(to_string(kind) + " does not take mu");
  detail::check_lengths(s, cw.size(), "starred_variant");
  const Scalar boot_sd = detail::bootstrap_sd_checked(s, w);
  detail::require_weights(cw);

  const Scalar numerator =
      g_form ? detail::absolute_numerator(s, cw, *mu) : detail::signed_numerator(s, cw);
  const bool tilde = kind == PivotKind::TTilde || kind == PivotKind::GTilde;
  const Scalar scale = tilde ? boot_sd / std::sqrt(w.m) : boot_sd * std::sqrt(cw.sum_squares);
  return numerator / scale;
}

// Studentized bootstrapped empirical process at x:
//   Alpha1Hat     sum c_i 1(x_i<=x)             / (sqrt(F_n(1-F_n)) sqrt(V^2))
//   Alpha1HatHat  sum c_i 1(x_i<=x)             / (sqrt(F*(1-F*))   sqrt(V^2))
//   Alpha2Hat     sum |c_i| (1(x_i<=x) - F(x)) / (sqrt(F_n(1-F_n)) sqrt(V^2))
//   Alpha2HatHat  sum |c_i| (1(x_i<=x) - F(x)) / (sqrt(F*(1-F*))   sqrt(V^2))
// The Alpha2 forms take the true F(x) as f_true.
template <typename Scalar>
Scalar empirical_pivot(PivotKind kind, const Sample<Scalar>& s, const WeightVector<Scalar>& w,
                       const CenteredWeights<Scalar>& cw, Scalar x,
                       std::optional<Scalar> f_true = std::nullopt,
                       EmpiricalScale scale_mode = EmpiricalScale::WeightNorm) {
  const bool first = kind == PivotKind::Alpha1Hat || kind == PivotKind::Alpha1HatHat;
  const bool second = kind == PivotKind::Alpha2Hat || kind == PivotKind::Alpha2HatHat;
  if (!first && !second) throw DomainError("empirical_pivot: unsupported kind " + to_string(kind));
  if (second && !f_true) throw MuArityError(to_string(kind) + " requires F(x)");
  if (first && f_true) throw MuArityError(to_string(kind) + " does not take F(x)");
  detail::check_lengths(s, cw.size(), "empirical_pivot");
  detail::check_lengths(s, w.size(), "empirical_pivot");
  detail::require_weights(cw);

  const bool hathat = kind == PivotKind::Alpha1HatHat || kind == PivotKind::Alpha2HatHat;
  const Scalar f = hathat ? bootstrap_ecdf(s, w, x) : ecdf(s, x);
  const Scalar spread = f * (Scalar(1) - f);
  if (!(spread > Scalar(0))) throw DegenerateScale();

  const Vector<Scalar> ind = (s.values().array() <= x).template cast<Scalar>().matrix();
  // Same centering as signed_numerator: sum c_i (1_i - F_n).
  const Scalar numerator = first ? cw.values.dot((ind.array() - ecdf(s, x)).matrix())
                                 : cw.values.cwiseAbs().dot((ind.array() - *f_true).matrix());
  const Scalar weight_scale = scale_mode == EmpiricalScale::WeightNorm
                                  ? std::sqrt(cw.sum_squares)
                                  : Scalar(1) / std::sqrt(w.m);
  return numerator / (std::sqrt(spread) * weight_scale);
}

}  // namespace pivotboot
