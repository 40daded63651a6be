#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "riskrank/errors.hpp"
#include "riskrank/stats.hpp"

using namespace riskrank;

TEST(Mean, Basics) {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(mean(xs), 2.5);
  EXPECT_THROW(mean(std::vector<double>{}), Error);
}

TEST(Stddev, SampleUsesNMinusOne) {
  std::vector<double> xs{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  EXPECT_NEAR(sample_stddev(xs), 2.138089935299395, 1e-12);
  EXPECT_NEAR(population_stddev(xs), 2.0, 1e-12);
  EXPECT_THROW(sample_stddev(std::vector<double>{1.0}), Error);
  try {
    sample_stddev(std::vector<double>{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::too_few_samples);
  }
}

TEST(NormalCdf, KnownPointsAndSymmetry) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959964), 0.975, 1e-8);
  for (double x : {0.1, 0.7, 1.3, 2.9}) EXPECT_NEAR(normal_cdf(x) + normal_cdf(-x), 1.0, 1e-15);
}

TEST(NormalQuantile, PinnedTableValues) {
  // The three conventional levels snap to their six-decimal textbook values.
  EXPECT_DOUBLE_EQ(normal_quantile(0.975), 1.959964);
  EXPECT_DOUBLE_EQ(normal_quantile(0.95), 1.644854);
  EXPECT_DOUBLE_EQ(normal_quantile(0.9), 1.281552);
  EXPECT_DOUBLE_EQ(normal_quantile(0.025), -1.959964);
  EXPECT_DOUBLE_EQ(normal_quantile(0.05), -1.644854);
  EXPECT_DOUBLE_EQ(normal_quantile(0.1), -1.281552);
}

TEST(NormalQuantile, MatchesReferenceValues) {
  // scipy.stats.norm.ppf
  EXPECT_NEAR(normal_quantile(0.8), 0.841621233572914, 1e-9);
  EXPECT_NEAR(normal_quantile(0.7), 0.524400512708041, 1e-9);
  EXPECT_NEAR(normal_quantile(0.6), 0.2533471031358, 1e-9);
  EXPECT_NEAR(normal_quantile(0.999), 3.09023230616781, 1e-9);
  EXPECT_NEAR(normal_quantile(0.01), -2.32634787404084, 1e-9);
  EXPECT_NEAR(normal_quantile(1e-6), -4.7534243088229, 1e-8);
  EXPECT_DOUBLE_EQ(normal_quantile(0.5), 0.0);
}

TEST(NormalQuantile, RoundTripsThroughCdf) {
  for (double p = 0.01; p < 0.995; p += 0.013) EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12);
}

TEST(NormalQuantile, RejectsDegenerateProbabilities) {
  for (double p : {0.0, 1.0, -0.5, 1.5}) {
    try {
      normal_quantile(p);
      FAIL() << "accepted p = " << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), errc::bad_range);
    }
  }
}

TEST(TwoSidedZ, StandardLevels) {
  EXPECT_DOUBLE_EQ(two_sided_z(0.95), 1.959964);
  EXPECT_DOUBLE_EQ(two_sided_z(0.90), 1.644854);
  EXPECT_DOUBLE_EQ(two_sided_z(0.80), 1.281552);
  EXPECT_THROW(two_sided_z(0.0), Error);
  EXPECT_THROW(two_sided_z(1.0), Error);
}

TEST(QuantileLinear, InterpolatesBetweenOrderStatistics) {
  std::vector<double> xs{3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0};
  EXPECT_DOUBLE_EQ(quantile_linear(xs, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_linear(xs, 1.0), 9.0);
  // numpy.quantile(xs, p) with the default linear interpolation
  EXPECT_NEAR(quantile_linear(xs, 0.1), 1.0, 1e-12);
  EXPECT_NEAR(quantile_linear(xs, 0.25), 1.75, 1e-12);
  EXPECT_NEAR(quantile_linear(xs, 0.5), 3.5, 1e-12);
  EXPECT_NEAR(quantile_linear(xs, 0.9), 6.9, 1e-12);
  EXPECT_THROW(quantile_linear(xs, -0.1), Error);
  EXPECT_THROW(quantile_linear(xs, 1.1), Error);
  EXPECT_THROW(quantile_linear(std::vector<double>{}, 0.5), Error);
}

TEST(QuantileLinear, SingleSampleIsConstant) {
  std::vector<double> xs{7.5};
  for (double p : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(quantile_linear(xs, p), 7.5);
}

TEST(RoundHalfAway, TiesGoAwayFromZero) {
  EXPECT_DOUBLE_EQ(round_half_away(3.125, 2), 3.13);
  EXPECT_DOUBLE_EQ(round_half_away(-3.125, 2), -3.13);
  EXPECT_DOUBLE_EQ(round_half_away(4.375, 2), 4.38);
  EXPECT_DOUBLE_EQ(round_half_away(0.005, 2), 0.01);
  EXPECT_DOUBLE_EQ(round_half_away(-0.005, 2), -0.01);
  EXPECT_DOUBLE_EQ(round_half_away(2.5, 0), 3.0);
  EXPECT_DOUBLE_EQ(round_half_away(-2.5, 0), -3.0);
  EXPECT_DOUBLE_EQ(round_half_away(0.994999, 2), 0.99);
}

TEST(Pearson, PerfectAndMixedCorrelation) {
  std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  std::vector<double> b{2.0, 4.0, 6.0, 8.0};
  std::vector<double> c{8.0, 6.0, 4.0, 2.0};
  EXPECT_DOUBLE_EQ(pearson_correlation(a, b), 1.0);
  EXPECT_DOUBLE_EQ(pearson_correlation(a, c), -1.0);
  std::vector<double> d{1.0, 3.0, 2.0, 5.0};
  double r = pearson_correlation(a, d);
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, 1.0);
  EXPECT_DOUBLE_EQ(pearson_correlation(a, d), pearson_correlation(d, a));
}

TEST(Pearson, RejectsConstantSeries) {
  std::vector<double> a{1.0, 2.0, 3.0};
  std::vector<double> flat{4.0, 4.0, 4.0};
  try {
    pearson_correlation(a, flat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::zero_variance_series);
  }
  EXPECT_THROW(pearson_correlation(a, std::vector<double>{1.0, 2.0}), Error);
}

TEST(GaussianSamples, SeededAndReproducible) {
  auto a = gaussian_samples(42, 1000, 10.0, 2.0);
  auto b = gaussian_samples(42, 1000, 10.0, 2.0);
  ASSERT_EQ(a.size(), 1000u);
  EXPECT_EQ(a, b);
  auto c = gaussian_samples(43, 1000, 10.0, 2.0);
  EXPECT_NE(a, c);
}

TEST(GaussianSamples, RecoversMoments) {
  auto xs = gaussian_samples(7, 20000, 10.0, 2.0);
  EXPECT_NEAR(mean(xs), 10.0, 0.05);
  EXPECT_NEAR(sample_stddev(xs), 2.0, 0.05);
}

TEST(GaussianSamples, ZeroSigmaIsConstant) {
  auto xs = gaussian_samples(1, 10, 3.0, 0.0);
  for (double x : xs) EXPECT_DOUBLE_EQ(x, 3.0);
}
