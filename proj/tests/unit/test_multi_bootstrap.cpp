#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pivotboot/multi_bootstrap.hpp"

using namespace pivotboot;

namespace {

ReplicateSet<double> make_reps(std::vector<double> values) {
  ReplicateSet<double> r;
  r.values = std::move(values);
  r.m = 10;
  return r;
}

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

TEST(OrthantProbability, Examples) {
  EXPECT_NEAR(orthant_probability(1, 0), 0.5, 1e-12);
  EXPECT_NEAR(orthant_probability(2, 1), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(orthant_probability(9, 0), 0.1, 1e-12);
  EXPECT_NEAR(1.0 - orthant_probability(9, 0), 0.9000169, 2e-5);
  EXPECT_THROW(orthant_probability(3, 4), DomainError);
  EXPECT_THROW(orthant_probability(3, -1), DomainError);
}

// l!(B-l)!/(B+1)! from the Beta integral.
TEST(OrthantProbability, QuadratureMatchesBetaClosedForm) {
  for (int B = 1; B <= 25; ++B) {
    for (int l = 0; l <= B; ++l) {
      const double beta = 1.0 / ((B + 1) * choose(B, l));
      EXPECT_NEAR(orthant_probability(B, l), beta, 1e-10 * beta) << "B=" << B << " l=" << l;
      EXPECT_NEAR(orthant_probability_exact(B, l), beta, 1e-14 * beta);
      EXPECT_NEAR(orthant_probability(B, l), orthant_probability(B, B - l), 1e-12 * beta);
    }
  }
}

TEST(YDistribution, UniformAndComplete) {
  for (int B = 2; B <= 25; ++B) {
    const auto y = y_distribution(B);
    ASSERT_EQ(y.pmf.size(), static_cast<std::size_t>(B + 1));
    double total = 0.0;
    for (double p : y.pmf) {
      EXPECT_NEAR(p, 1.0 / (B + 1), 1e-9) << "B=" << B;
      EXPECT_GE(p, 0.0);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    const auto exact = y_distribution_exact(B);
    for (int l = 0; l <= B; ++l) EXPECT_NEAR(y.pmf[l], exact.pmf[l], 1e-10);
  }
  const auto two = y_distribution(2);
  for (double p : two.pmf) EXPECT_NEAR(p, 1.0 / 3.0, 1e-9);
  EXPECT_THROW(y_distribution(1), DomainError);
}

// Z_b = (Z_0 + U_b)/sqrt(2) has unit variances and correlations 1/2.
TEST(YDistribution, MonteCarloOfTheExchangeableVector) {
  for (int B : {2, 5, 9}) {
    Stream stream(500 + static_cast<std::uint64_t>(B));
    const int reps = 1000000;
    std::vector<int> counts(static_cast<std::size_t>(B + 1), 0);
    for (int r = 0; r < reps; ++r) {
      const double z0 = draw_standard_normal(stream);
      int negatives = 0;
      for (int b = 0; b < B; ++b) {
        if (z0 + draw_standard_normal(stream) < 0.0) ++negatives;
      }
      ++counts[static_cast<std::size_t>(negatives)];
    }
    const auto y = y_distribution(B);
    for (int l = 0; l <= B; ++l) {
      const double p = y.pmf[static_cast<std::size_t>(l)];
      const double se = std::sqrt(p * (1 - p) / reps);
      EXPECT_NEAR(static_cast<double>(counts[static_cast<std::size_t>(l)]) / reps, p, 3.5 * se)
          << "B=" << B << " l=" << l;
    }
  }
}

TEST(YQuantile, Examples) {
  EXPECT_EQ(y_quantile(9, 0.1), 8);
  EXPECT_EQ(y_quantile(9, 0.5), 4);
  EXPECT_EQ(y_quantile(2, 1e-9), 2);
  EXPECT_EQ(y_quantile(2, 0.999), 0);
}

TEST(YQuantile, SmallestYWithCumulativeAtLeastLevel) {
  for (int B = 2; B <= 25; ++B) {
    const auto y = y_distribution(B);
    for (double alpha = 0.005; alpha < 1.0; alpha += 0.0173) {
      int expected = 0;
      double cum = 0.0;
      for (int l = 0; l <= B; ++l) {
        cum = (l + 1.0) / (B + 1.0);
        if (cum >= 1.0 - alpha - 1e-12) {
          expected = l;
          break;
        }
      }
      EXPECT_EQ(y_quantile(B, alpha), expected) << "B=" << B << " alpha=" << alpha;
    }
  }
}

TEST(ClassicalCutoffRank, Examples) {
  EXPECT_EQ(classical_cutoff_rank(9, 0.1), 9);
  EXPECT_EQ(classical_cutoff_rank(3, 0.5), 2);
  EXPECT_THROW(classical_cutoff_rank(9, 0.15), NonIntegerRank);
  EXPECT_EQ(classical_cutoff_rank(19, 0.05), 19);
  EXPECT_EQ(classical_cutoff_rank(99, 0.1), 90);
}

TEST(DrawReplicates, DeterministicAndCountsRedraws) {
  const Sample<double> s{1.0, 0.0, 3.5, -2.0};
  const Stream stream(77);
  const auto a = draw_replicates(s, 2, 4, stream);
  const auto b = draw_replicates(s, 2, 4, stream);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.B(), 2);
  EXPECT_EQ(a.m, 4);
  EXPECT_NE(a.values[0], a.values[1]);
  EXPECT_THROW(draw_replicates(s, 1, 4, stream), DomainError);
  EXPECT_THROW(draw_replicates(Sample<double>{2.0, 2.0}, 3, 4, stream), ZeroVariance);
}

TEST(DrawReplicates, TwoPointSampleTakesPlusMinusRootTwo) {
  const Sample<double> s{1.0, 0.0};
  const int reps = 100000 / 10;
  int plus = 0, total = 0;
  std::int64_t redraws = 0;
  for (int r = 0; r < reps; ++r) {
    const auto set = draw_replicates(s, 10, 2, Stream(9000 + static_cast<std::uint64_t>(r)));
    redraws += set.redraws;
    for (double v : set.values) {
      ASSERT_NEAR(std::abs(v), std::sqrt(2.0), 1e-14);
      if (v > 0) ++plus;
      ++total;
    }
  }
  EXPECT_NEAR(static_cast<double>(plus) / total, 0.5, 3 * std::sqrt(0.25 / total));
  // Half the draws of w are (1,1) and get redrawn: about one redraw per kept draw.
  EXPECT_NEAR(static_cast<double>(redraws) / total, 1.0, 0.05);
}

TEST(OrderStatistic, SmallestFirstWithStableTies) {
  const auto r = make_reps({3.0, 1.0, 2.0, 1.0});
  EXPECT_EQ(order_statistic(r, 1), 1.0);
  EXPECT_EQ(order_statistic(r, 3), 2.0);
  EXPECT_EQ(order_statistic(r, 4), 3.0);
  EXPECT_THROW(order_statistic(r, 0), DomainError);
  EXPECT_THROW(order_statistic(r, 5), DomainError);
}

TEST(RefinedContains, MaximalOrderStatistic) {
  const auto r = make_reps({1.0, 2.0, 3.0});
  // B = 3: y = 3 for alpha small enough, which falls back to the maximum.
  const double alpha = 0.1;
  ASSERT_EQ(y_quantile(3, alpha), 3);
  EXPECT_TRUE(refined_contains(3.0, r, alpha));
  EXPECT_FALSE(refined_contains(3.0000001, r, alpha));
  EXPECT_TRUE(refined_contains(-10.0, r, alpha));
}

TEST(RefinedContains, NineReplicatesAtTenPercentUseTheMaximum) {
  Stream stream(78);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> v(9);
    for (auto& x : v) x = draw_standard_normal(stream);
    const auto r = make_reps(v);
    const double mx = *std::max_element(v.begin(), v.end());
    EXPECT_EQ(refined_cutoff_rank(9, 0.1), 9);
    EXPECT_TRUE(refined_contains(mx, r, 0.1));
    EXPECT_FALSE(refined_contains(std::nextafter(mx, 1e300), r, 0.1));
    // The classical rank agrees here: nu = 10 * 0.9 = 9.
    for (double t : {mx - 0.1, mx, mx + 0.1}) {
      EXPECT_EQ(refined_contains(t, r, 0.1), classical_contains(t, r, 0.1));
    }
  }
}

TEST(RefinedContains, InteriorRankFollowsYQuantile) {
  const auto r = make_reps({5.0, 1.0, 4.0, 2.0, 3.0, 9.0, 8.0, 7.0, 6.0});
  // B = 9, alpha = 0.5: y = 4, so the cutoff is the 5th smallest value.
  EXPECT_EQ(refined_cutoff_rank(9, 0.5), 5);
  EXPECT_TRUE(refined_contains(5.0, r, 0.5));
  EXPECT_FALSE(refined_contains(5.5, r, 0.5));
}
