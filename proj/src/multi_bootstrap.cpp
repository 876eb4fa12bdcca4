#include "pivotboot/multi_bootstrap.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>

#include "pivotboot/normal.hpp"

namespace pivotboot {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kKronrodNodes[1], [3], [5] and the center.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gauss_kronrod_15(const F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double fc = f(mid);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Globally adaptive: keep bisecting the segment with the largest error
// estimate until the summed estimate meets the tolerance.
template <typename F>
double integrate(const F& f, double a, double b, const QuadratureSpec& spec) {
  constexpr int kInitialSegments = 16;
  std::priority_queue<Segment> queue;
  double total = 0.0;
  double error = 0.0;
  const double step = (b - a) / kInitialSegments;
  for (int i = 0; i < kInitialSegments; ++i) {
    const Segment seg = gauss_kronrod_15(f, a + i * step, a + (i + 1) * step);
    total += seg.value;
    error += seg.error;
    queue.push(seg);
  }
  const int max_segments = kInitialSegments << std::min(spec.max_depth, 12);
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
         static_cast<int>(queue.size()) < max_segments) {
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Recompute from the leaves to shed accumulated cancellation.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    queue.pop();
  }
  return sum;
}

double binomial_coefficient(int n, int k) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

void check_orthant_args(int B, int l) {
  if (B < 1) throw DomainError("orthant_probability: B must be >= 1");
  if (l < 0 || l > B) {
    throw DomainError("orthant_probability: l = " + std::to_string(l) + " outside [0, " +
                      std::to_string(B) + "]");
  }
}

}  // namespace

double orthant_probability(int B, int l, const QuadratureSpec& quadrature) {
  check_orthant_args(B, l);
  const auto integrand = [B, l](double z) {
    const double below = normal_sf(z);  // Phi(-z)
    const double above = normal_cdf(z);
    return normal_pdf(z) * std::pow(below, l) * std::pow(above, B - l);
  };
  // phi vanishes to below 1e-80 outside [-19, 19].
  return integrate(integrand, -19.0, 19.0, quadrature);
}

double orthant_probability_exact(int B, int l) {
  check_orthant_args(B, l);
  return 1.0 / (static_cast<double>(B + 1) * binomial_coefficient(B, l));
}

YDistribution y_distribution(int B, const QuadratureSpec& quadrature) {
  if (B < 2) throw DomainError("y_distribution: B must be >= 2");
  YDistribution dist;
  dist.B = B;
  dist.pmf.resize(static_cast<std::size_t>(B) + 1);
  for (int l = 0; l <= B; ++l) {
    dist.pmf[static_cast<std::size_t>(l)] = binomial_coefficient(B, l) * orthant_probability(B, l, quadrature);
  }
  return dist;
}

YDistribution y_distribution_exact(int B) {
  if (B < 2) throw DomainError("y_distribution: B must be >= 2");
  YDistribution dist;
  dist.B = B;
  dist.pmf.assign(static_cast<std::size_t>(B) + 1, 1.0 / static_cast<double>(B + 1));
  return dist;
}

int y_quantile(int B, double alpha) {
  if (B < 2) throw DomainError("y_quantile: B must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("y_quantile: alpha must lie in (0, 1)");
  // P(Y <= y) = (y + 1)/(B + 1); the slack absorbs rounding in (1 - alpha)(B + 1).
  const double target = (1.0 - alpha) * static_cast<double>(B + 1);
  const int y = static_cast<int>(std::ceil(target - 1e-9)) - 1;
  return std::clamp(y, 0, B);
}

int classical_cutoff_rank(int B, double alpha) {
  if (B < 2) throw DomainError("classical_cutoff_rank: B must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("classical_cutoff_rank: alpha must lie in (0, 1)");
  const double nu = static_cast<double>(B + 1) * (1.0 - alpha);
  const double rounded = std::round(nu);
  if (std::abs(nu - rounded) > 1e-9) {
    throw NonIntegerRank("(B+1)(1-alpha) = " + std::to_string(nu) + " is not an integer");
  }
  const int rank = static_cast<int>(rounded);
  if (rank < 1 || rank > B) throw DomainError("classical_cutoff_rank: rank outside [1, B]");
  return rank;
}

}  // namespace pivotboot
