#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pivotboot/pivots.hpp"
#include "pivotboot/rng.hpp"

namespace pivotboot {

// T* evaluated on B independent multinomial weight draws.
template <typename Scalar = double>
struct ReplicateSet {
  std::vector<Scalar> values;
  std::int64_t m = 0;
  // Weight draws with V^2 = 0 that were discarded and redrawn.
  std::int64_t redraws = 0;

  std::int64_t B() const { return static_cast<std::int64_t>(values.size()); }
};

// Law of Y, the number of negative coordinates of a B-variate centered
// Gaussian vector with unit variances and all correlations 1/2.
struct YDistribution {
  int B = 0;
  std::vector<double> pmf;
};

struct QuadratureSpec {
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  int max_depth = 40;
};

// P(Z_1 < 0, ..., Z_l < 0, Z_{l+1} > 0, ..., Z_B > 0) for the equicorrelated
// (rho = 1/2) vector. Writing Z_b = (Z_0 + U_b)/sqrt(2) reduces it to
//   integral phi(z) Phi(-z)^l Phi(z)^(B-l) dz,
// evaluated here by adaptive Gauss-Kronrod quadrature.
double orthant_probability(int B, int l, const QuadratureSpec& quadrature = {});

// The same probability in closed form, l! (B-l)! / (B+1)!.
double orthant_probability_exact(int B, int l);

YDistribution y_distribution(int B, const QuadratureSpec& quadrature = {});

// pmf from the closed form: every entry equals 1/(B+1).
YDistribution y_distribution_exact(int B);

// Smallest y with P(Y <= y) >= 1 - alpha under the exact law.
int y_quantile(int B, double alpha);

// nu = (B+1)(1-alpha); requires nu to be an integer in [1, B].
int classical_cutoff_rank(int B, double alpha);

// Draws B values of T* from per-replicate child streams of `stream`.
template <typename Scalar>
ReplicateSet<Scalar> draw_replicates(const Sample<Scalar>& s, int B, std::int64_t m, const Stream& stream) {
  if (B < 2) throw DomainError("draw_replicates: B must be >= 2");
  if (s.has_zero_variance()) throw ZeroVariance();
  ReplicateSet<Scalar> reps;
  reps.m = m;
  reps.values.reserve(static_cast<std::size_t>(B));
  for (int b = 0; b < B; ++b) {
    Stream sub = stream.split("replicate", static_cast<std::uint64_t>(b));
    for (;;) {
      const auto w = draw_multinomial_weights<Scalar>(s.size(), m, sub);
      const auto cw = center(w, s.size());
      if (detail::is_degenerate(cw)) {
        ++reps.redraws;
        continue;
      }
      reps.values.push_back(t_star(s, cw));
      break;
    }
  }
  return reps;
}

// k-th smallest replicate (1-based), ties kept in draw order.
template <typename Scalar>
Scalar order_statistic(const ReplicateSet<Scalar>& reps, int k) {
  if (k < 1 || k > reps.B()) throw DomainError("order_statistic: rank out of range");
  std::vector<Scalar> sorted = reps.values;
  std::stable_sort(sorted.begin(), sorted.end());
  return sorted[static_cast<std::size_t>(k - 1)];
}

// Rank (smallest first) of the refined cutoff: P(cover) -> P(Y <= y) requires
// the (y+1)-th smallest replicate. y = B cannot be realized with B
// replicates and falls back to the maximum.
inline int refined_cutoff_rank(int B, double alpha) {
  return std::min(y_quantile(B, alpha) + 1, B);
}

// t_value <= refined cutoff; B = 9, alpha = 0.1 compares against the maximum.
template <typename Scalar>
bool refined_contains(Scalar t_value, const ReplicateSet<Scalar>& reps, double alpha) {
  const int B = static_cast<int>(reps.B());
  if (B < 2) throw DomainError("refined_contains: needs B >= 2 replicates");
  return t_value <= order_statistic(reps, refined_cutoff_rank(B, alpha));
}

// t_value <= the nu-th smallest replicate.
template <typename Scalar>
bool classical_contains(Scalar t_value, const ReplicateSet<Scalar>& reps, double alpha) {
  const int B = static_cast<int>(reps.B());
  return t_value <= order_statistic(reps, classical_cutoff_rank(B, alpha));
}

}  // namespace pivotboot
