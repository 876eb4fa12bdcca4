#pragma once

#include <cstdint>
#include <string>

namespace pivotboot {

// Inputs of the Berry-Esseen type bound for the conditional law of G* (part A)
// and T* (part B) given the weights.
struct BoundParams {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double delta = 0.0;
  double eps = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  // E|X - mu|^3 / sigma^{3/2}
  double third_abs_moment_ratio = 1.0;
  // P_X(|S_n^2 - sigma^2| > eps1^2)
  double p_var_dev = 0.0;
  // Universal Berry-Esseen constant.
  double C = 0.56;
};

enum class BoundPart { A, B };

struct BoundTerms {
  double delta_n = 0.0;
  // First line of the bound: the sixth-moment term.
  double sixth_moment_term = 0.0;
  // Second line: the eps^{-2} Chebyshev term.
  double variance_term = 0.0;
  double total = 0.0;
};

// Throws InadmissibleParams naming the violated condition.
void check_admissible(const BoundParams& p);

// (delta - (eps1/eps)^2 - p_var_dev + eps2) / (C * ratio), with +eps2 as printed.
double delta_n(const BoundParams& p);

// The same with -eps2, matching the sign used in the admissibility condition.
double delta_n_alternate(const BoundParams& p);

BoundTerms berry_esseen_terms(const BoundParams& p, BoundPart part = BoundPart::A);

double berry_esseen_bound(const BoundParams& p, BoundPart part = BoundPart::A);

enum class RateKind { GStarRate, TStarRate, GDoubleStarRate, TDoubleStarRate };

std::string to_string(RateKind kind);
RateKind parse_rate_kind(const std::string& name);

// max{m/n^2, 1/m}; the double-star kinds add n/m^2.
double convergence_rate(RateKind kind, std::int64_t n, std::int64_t m);

}  // namespace pivotboot
