#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pivotboot/estimators.hpp"

using namespace pivotboot;

namespace {

WeightVector<double> make_weights(std::vector<double> counts) {
  WeightVector<double> w;
  w.counts = Eigen::Map<Vector<double>>(counts.data(), static_cast<Eigen::Index>(counts.size()));
  w.m = w.counts.sum();
  return w;
}

Sample<double> random_sample(Eigen::Index n, Stream& stream) {
  Vector<double> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = draw_standard_normal(stream) * 3.0 + 1.0;
  return Sample<double>(v);
}

}  // namespace

TEST(Sample, CachedMomentsUseDivisorN) {
  const Sample<double> s{1.0, 0.0, 2.0, 5.0};
  EXPECT_DOUBLE_EQ(s.mean(), 2.0);
  EXPECT_DOUBLE_EQ(s.variance(), (1.0 + 4.0 + 0.0 + 9.0) / 4.0);
  EXPECT_DOUBLE_EQ(s.sd(), std::sqrt(3.5));
  EXPECT_EQ(s.size(), 4);
}

TEST(Sample, ConstructionFromSpan) {
  const std::vector<double> v{3.0, 4.0};
  const Sample<double> s{std::span<const double>(v)};
  EXPECT_DOUBLE_EQ(s.mean(), 3.5);
  EXPECT_DOUBLE_EQ(s.variance(), 0.25);
}

TEST(Sample, RejectsEmpty) { EXPECT_THROW(Sample<double>(Vector<double>()), DomainError); }

TEST(Sample, ZeroVarianceDetection) {
  EXPECT_TRUE((Sample<double>{2.5, 2.5, 2.5}).has_zero_variance());
  EXPECT_FALSE((Sample<double>{2.5, 2.5, 2.5000001}).has_zero_variance());
  EXPECT_TRUE((Sample<double>{0.0, 0.0}).has_zero_variance());
}

TEST(Sample, CachedMomentsMatchRecomputation) {
  Stream stream(3);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_sample(2 + rep, stream);
    double mean = 0.0;
    for (double x : s.values()) mean += x;
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (double x : s.values()) var += (x - mean) * (x - mean);
    var /= static_cast<double>(s.size());
    EXPECT_NEAR(s.mean(), mean, 1e-12 * std::max(1.0, std::abs(mean)));
    EXPECT_NEAR(s.variance(), var, 1e-12 * var);
  }
}

TEST(BootstrapMean, Examples) {
  EXPECT_DOUBLE_EQ(bootstrap_mean(Sample<double>{1.0, 0.0}, make_weights({2, 0})), 1.0);
  EXPECT_DOUBLE_EQ(bootstrap_mean(Sample<double>{1.0, 0.0}, make_weights({1, 1})), 0.5);
  EXPECT_DOUBLE_EQ(bootstrap_mean(Sample<double>{1.0, 0.0, 2.0}, make_weights({2, 1, 0})), 2.0 / 3.0);
  EXPECT_THROW(bootstrap_mean(Sample<double>{1.0, 0.0}, make_weights({1, 1, 1})), DimensionMismatch);
}

TEST(BootstrapMean, EqualWeightsReproduceSampleMean) {
  const Sample<double> s{0.25, 1.5, -3.0, 8.0};
  EXPECT_EQ(bootstrap_mean(s, make_weights({3, 3, 3, 3})), s.mean());
}

TEST(BootstrapMean, UnbiasedOverWeightDraws) {
  Stream stream(4);
  const auto s = random_sample(15, stream);
  const int reps = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double v = bootstrap_mean(s, draw_multinomial_weights<double>(15, 15, stream));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum_sq / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, s.mean(), 3 * se);
}

// Summing the counts of B independent m-resamples gives one (B m)-resample,
// and its bootstrap mean is the average of the B bootstrap means.
TEST(BootstrapMean, PoolingSubsamples) {
  Stream stream(5);
  const auto s = random_sample(12, stream);
  for (int B : {2, 5, 9}) {
    const std::int64_t m = 12;
    WeightVector<double> pooled;
    pooled.counts = Vector<double>::Zero(12);
    double average = 0.0;
    for (int b = 0; b < B; ++b) {
      const auto w = draw_multinomial_weights<double>(12, m, stream);
      pooled.counts += w.counts;
      average += bootstrap_mean(s, w) / B;
    }
    pooled.m = static_cast<double>(B * m);
    EXPECT_EQ(pooled.counts.sum(), pooled.m);
    EXPECT_NEAR(bootstrap_mean(s, pooled), average, 1e-13);
  }
}

TEST(BootstrapVariance, Examples) {
  EXPECT_DOUBLE_EQ(bootstrap_variance(Sample<double>{1.0, 0.0}, make_weights({2, 0})), 0.0);
  EXPECT_DOUBLE_EQ(bootstrap_variance(Sample<double>{1.0, 0.0}, make_weights({1, 1})), 0.25);
  EXPECT_NEAR(bootstrap_variance(Sample<double>{1.0, 0.0, 2.0}, make_weights({2, 1, 0})), 2.0 / 9.0, 1e-15);
  EXPECT_THROW(bootstrap_variance(Sample<double>{1.0, 0.0}, make_weights({1})), DimensionMismatch);
}

TEST(BootstrapVariance, TranslationInvariant) {
  Stream stream(6);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_sample(20, stream);
    const auto w = draw_multinomial_weights<double>(20, 20, stream);
    const double c = 10.0 * draw_standard_normal(stream);
    const Sample<double> shifted(Vector<double>(s.values().array() + c));
    EXPECT_NEAR(bootstrap_variance(shifted, w), bootstrap_variance(s, w), 1e-12);
  }
}

TEST(WeightedMeanEstimator, Examples) {
  const auto cw2 = center(make_weights({2, 0}), 2);
  EXPECT_DOUBLE_EQ(weighted_mean_estimator(Sample<double>{1.0, 0.0}, cw2), 0.5);
  const auto cw3 = center(make_weights({2, 1, 0}), 3);
  EXPECT_NEAR(weighted_mean_estimator(Sample<double>{1.0, 0.0, 2.0}, cw3), 1.5, 1e-15);
  EXPECT_THROW(weighted_mean_estimator(Sample<double>{1.0, 0.0}, center(make_weights({1, 1}), 2)),
               DegenerateWeights);
}

TEST(WeightedMeanEstimator, ConstantDataGiveTheConstant) {
  Stream stream(7);
  const Sample<double> s{4.25, 4.25, 4.25, 4.25, 4.25};
  for (int rep = 0; rep < 20; ++rep) {
    const auto cw = center(draw_multinomial_weights<double>(5, 7, stream), 5);
    if (!(cw.sum_abs > 0)) continue;
    EXPECT_NEAR(weighted_mean_estimator(s, cw), 4.25, 1e-14);
  }
}

TEST(Ecdf, Examples) {
  const Sample<double> s{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(ecdf(s, 2.0), 2.0 / 3.0);
  EXPECT_EQ(ecdf(s, 0.5), 0.0);
  EXPECT_EQ(ecdf(Sample<double>{1.0, 1.0, 1.0}, 1.0), 1.0);
}

TEST(BootstrapEcdf, Examples) {
  const Sample<double> s{1.0, 2.0, 3.0};
  EXPECT_EQ(bootstrap_ecdf(s, make_weights({2, 0, 1}), 0.0), 0.0);
  EXPECT_DOUBLE_EQ(bootstrap_ecdf(s, make_weights({2, 0, 1}), 2.0), 2.0 / 3.0);
  for (double x : {0.0, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
    EXPECT_DOUBLE_EQ(bootstrap_ecdf(s, make_weights({4, 4, 4}), x), ecdf(s, x));
  }
  EXPECT_THROW(bootstrap_ecdf(s, make_weights({1, 1}), 2.0), DimensionMismatch);
}

TEST(BootstrapEcdf, StepFunctionShape) {
  Stream stream(8);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_sample(10, stream);
    const auto w = draw_multinomial_weights<double>(10, 13, stream);
    const double lo = s.values().minCoeff();
    const double hi = s.values().maxCoeff();
    EXPECT_EQ(bootstrap_ecdf(s, w, std::nextafter(lo, -1e300)), 0.0);
    EXPECT_DOUBLE_EQ(bootstrap_ecdf(s, w, hi), 1.0);
    EXPECT_DOUBLE_EQ(bootstrap_ecdf(s, w, hi + 1.0), 1.0);
    double prev = 0.0;
    for (double x = lo - 1.0; x <= hi + 1.0; x += 0.05) {
      const double f = bootstrap_ecdf(s, w, x);
      EXPECT_GE(f, prev);
      prev = f;
    }
    // Right-continuity at a sample point: the value at x_i includes x_i.
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double xi = s.values()[i];
      EXPECT_EQ(bootstrap_ecdf(s, w, xi), bootstrap_ecdf(s, w, xi + 1e-12 * std::max(1.0, std::abs(xi))));
    }
  }
}

TEST(Indicators, ReduceToZeroOneSample) {
  const Sample<double> s{0.5, 2.0, -1.0, 2.0};
  const auto ind = s.indicators(1.0);
  EXPECT_EQ(ind.values(), (Vector<double>(4) << 1, 0, 1, 0).finished());
  EXPECT_DOUBLE_EQ(ind.mean(), ecdf(s, 1.0));
}
