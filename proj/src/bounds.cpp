#include "pivotboot/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pivotboot/errors.hpp"
#include "pivotboot/weights.hpp"

namespace pivotboot {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double delta_n_with(const BoundParams& p, double eps2_sign) {
  check_admissible(p);
  const double r = p.eps1 / p.eps;
  return (p.delta - r * r - p.p_var_dev + eps2_sign * p.eps2) / (p.C * p.third_abs_moment_ratio);
}

}  // namespace

void check_admissible(const BoundParams& p) {
  if (!(p.eps > 0.0)) throw InadmissibleParams("eps > 0 violated: eps = " + fmt(p.eps));
  if (!(p.delta > 0.0)) throw InadmissibleParams("delta > 0 violated: delta = " + fmt(p.delta));
  if (p.eps1 < 0.0 || p.eps2 < 0.0) throw InadmissibleParams("eps1, eps2 >= 0 violated");
  if (!(p.C > 0.0)) throw InadmissibleParams("C > 0 violated: C = " + fmt(p.C));
  if (!(p.third_abs_moment_ratio > 0.0)) {
    throw InadmissibleParams("E|X-mu|^3/sigma^{3/2} > 0 violated");
  }
  if (!(p.p_var_dev >= 0.0 && p.p_var_dev <= 1.0)) {
    throw InadmissibleParams("0 <= P_X(|S_n^2 - sigma^2| > eps1^2) <= 1 violated");
  }
  const double r = p.eps1 / p.eps;
  const double rhs = r * r + p.p_var_dev + p.eps2;
  if (!(p.delta > rhs)) {
    throw InadmissibleParams("delta > (eps1/eps)^2 + P_X(|S_n^2 - sigma^2| > eps1^2) + eps2 violated: " +
                             fmt(p.delta) + " <= " + fmt(rhs));
  }
}

double delta_n(const BoundParams& p) { return delta_n_with(p, +1.0); }

double delta_n_alternate(const BoundParams& p) { return delta_n_with(p, -1.0); }

BoundTerms berry_esseen_terms(const BoundParams& p, BoundPart /*part*/) {
  // Parts A and B share the same right-hand side.
  if (p.n < 2) throw InadmissibleParams("n >= 2 violated: the (1 - 1/n)^{-3} factor is singular at n = 1");
  if (p.m < 1) throw InadmissibleParams("m >= 1 violated");
  if (!(p.eps < 1.0)) throw InadmissibleParams("eps < 1 violated: the (1 - eps)^{-3} factor needs eps < 1");

  BoundTerms out;
  out.delta_n = delta_n(p);

  const double n = static_cast<double>(p.n);
  const double m = static_cast<double>(p.m);
  const double q = 1.0 - 1.0 / n;
  const double m2 = m * m;
  const double m3 = m2 * m;
  const double n2 = n * n;
  const double n3 = n2 * n;

  out.sixth_moment_term = std::pow(out.delta_n, -2.0) * std::pow(1.0 - p.eps, -3.0) * std::pow(q, -3.0) *
                          (n / m3 + n2 / m3) * sixth_moment_expression(p.n, p.m);

  const double bracket = q / (n3 * m3) + std::pow(q, 4) / m3 + (m - 1.0) * q * q / (n * m3) +
                         4.0 * (n - 1.0) / (n3 * m) + 1.0 / m2 - 1.0 / (n * m2) + (n - 1.0) / (n3 * m3) +
                         4.0 * (n - 1.0) / (n2 * m3) - q * q / m2;
  out.variance_term = std::pow(p.eps, -2.0) * m2 / q * bracket;
  out.total = out.sixth_moment_term + out.variance_term;
  return out;
}

double berry_esseen_bound(const BoundParams& p, BoundPart part) { return berry_esseen_terms(p, part).total; }

std::string to_string(RateKind kind) {
  switch (kind) {
    case RateKind::GStarRate: return "GStarRate";
    case RateKind::TStarRate: return "TStarRate";
    case RateKind::GDoubleStarRate: return "GDoubleStarRate";
    case RateKind::TDoubleStarRate: return "TDoubleStarRate";
  }
  return "unknown";
}

RateKind parse_rate_kind(const std::string& name) {
  for (RateKind k : {RateKind::GStarRate, RateKind::TStarRate, RateKind::GDoubleStarRate,
                     RateKind::TDoubleStarRate}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown rate kind: " + name);
}

double convergence_rate(RateKind kind, std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw DomainError("convergence_rate: n, m must be >= 1");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  double rate = std::max(md / (nd * nd), 1.0 / md);
  if (kind == RateKind::GDoubleStarRate || kind == RateKind::TDoubleStarRate) {
    rate = std::max(rate, nd / (md * md));
  }
  return rate;
}

}  // namespace pivotboot
