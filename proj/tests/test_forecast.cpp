#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "riskrank/fixtures.hpp"
#include "riskrank/forecast.hpp"

using namespace riskrank;

namespace {

// Gaussian whose 95% two-sided interval has the requested half-width.
PredictiveDistribution gaussian_with_half_width(double mean, double half) {
  return PredictiveDistribution::gaussian(mean, half / 1.959964);
}

}  // namespace

TEST(ConfidenceInterval, ParametricNinetyFivePercent) {
  Interval iv = confidence_interval(gaussian_with_half_width(1600.0, 100.0), 0.95);
  EXPECT_NEAR(iv.lo, 1500.0, 0.01);
  EXPECT_NEAR(iv.hi, 1700.0, 0.01);
  iv = confidence_interval(gaussian_with_half_width(15150.0, 150.0), 0.95);
  EXPECT_NEAR(iv.lo, 15000.0, 0.01);
  EXPECT_NEAR(iv.hi, 15300.0, 0.01);
  iv = confidence_interval(gaussian_with_half_width(8100.0, 80.0), 0.95);
  EXPECT_NEAR(iv.lo, 8020.0, 0.01);
  EXPECT_NEAR(iv.hi, 8180.0, 0.01);
}

TEST(ConfidenceInterval, WiderLevelWiderInterval) {
  auto d = PredictiveDistribution::gaussian(0.0, 1.0);
  Interval narrow = confidence_interval(d, 0.5);
  Interval wide = confidence_interval(d, 0.99);
  EXPECT_LT(narrow.hi - narrow.lo, wide.hi - wide.lo);
  EXPECT_THROW(confidence_interval(d, 0.0), Error);
  EXPECT_THROW(confidence_interval(d, 1.0), Error);
}

TEST(ConfidenceInterval, EmpiricalUsesTailQuantiles) {
  std::vector<double> samples;
  for (int i = 1; i <= 100; ++i) samples.push_back(static_cast<double>(i));
  Interval iv = confidence_interval(PredictiveDistribution::empirical(samples), 0.9);
  // Linear-interpolation quantiles at 0.05 and 0.95 over 1..100.
  EXPECT_NEAR(iv.lo, 5.95, 1e-12);
  EXPECT_NEAR(iv.hi, 95.05, 1e-12);
}

TEST(AggregateMcSamples, CollapsesToMoments) {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  PredictiveDistribution d = aggregate_mc_samples(xs);
  EXPECT_TRUE(d.parametric());
  EXPECT_DOUBLE_EQ(d.mu, 2.5);
  EXPECT_NEAR(d.sigma, 1.2909944487358056, 1e-12);
  EXPECT_THROW(aggregate_mc_samples(std::vector<double>{1.0}), Error);
}

TEST(QuantileScenarios, ParametricSwingIsTenNinety) {
  auto d = PredictiveDistribution::gaussian(1600.0, 51.0213586);
  ScenarioTriple t = quantile_scenarios(d);
  EXPECT_DOUBLE_EQ(t.base, 1600.0);
  EXPECT_NEAR(t.best - t.base, 1.281552 * 51.0213586, 1e-9);
  EXPECT_NEAR(t.base - t.worst, 1.281552 * 51.0213586, 1e-9);
}

TEST(QuantileScenarios, EmpiricalOrdering) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> xs;
    for (int i = 0; i < 40; ++i) xs.push_back(u(rng));
    ScenarioTriple t = quantile_scenarios(PredictiveDistribution::empirical(xs));
    EXPECT_LE(t.worst, t.base);
    EXPECT_LE(t.base, t.best);
  }
}

TEST(ErrorMetrics, PinnedQuarterlyComparison) {
  // Point forecasts 15150/1600/8100 against actuals 15200/1650/8120.
  std::vector<std::pair<double, double>> ta{{15150.0, 15200.0}};
  std::vector<std::pair<double, double>> np{{1600.0, 1650.0}};
  std::vector<std::pair<double, double>> eq{{8100.0, 8120.0}};
  ErrorMetrics m = error_metrics(ta);
  EXPECT_DOUBLE_EQ(m.mae, 50.0);
  EXPECT_NEAR(m.mape, 100.0 * 50.0 / 15200.0, 1e-12);
  EXPECT_DOUBLE_EQ(round_half_away(m.mape, 2), 0.33);
  m = error_metrics(np);
  EXPECT_DOUBLE_EQ(m.mae, 50.0);
  EXPECT_DOUBLE_EQ(round_half_away(m.mape, 2), 3.03);
  m = error_metrics(eq);
  EXPECT_DOUBLE_EQ(m.mae, 20.0);
  EXPECT_DOUBLE_EQ(round_half_away(m.mape, 2), 0.25);
}

TEST(ErrorMetrics, ZeroActualIsAnError) {
  std::vector<std::pair<double, double>> pairs{{1.0, 0.0}};
  try {
    error_metrics(pairs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::zero_actual);
  }
  EXPECT_THROW(error_metrics(std::vector<std::pair<double, double>>{}), Error);
}

TEST(ValueAtRisk, StandardGaussian) {
  auto d = PredictiveDistribution::gaussian(0.0, 1.0);
  EXPECT_NEAR(value_at_risk(d, 0.95), 1.644854, 1e-6);
  EXPECT_NEAR(value_at_risk(d, 0.99), 2.3263478740, 1e-6);
}

TEST(ValueAtRisk, BaselineOverridesCenter) {
  auto d = PredictiveDistribution::gaussian(1600.0, 51.0213586);
  double from_mean = value_at_risk(d, 0.95);
  EXPECT_NEAR(from_mean, 1.644854 * 51.0213586, 1e-9);
  double from_base = value_at_risk(d, 0.95, 1650.0);
  EXPECT_NEAR(from_base - from_mean, 50.0, 1e-9);
  EXPECT_THROW(value_at_risk(d, 0.0), Error);
}

TEST(ValueAtRisk, EmpiricalTail) {
  std::vector<double> samples;
  for (int i = 1; i <= 100; ++i) samples.push_back(static_cast<double>(i));
  auto d = PredictiveDistribution::empirical(samples);
  // center 50.5, 5th percentile 5.95
  EXPECT_NEAR(value_at_risk(d, 0.95), 50.5 - 5.95, 1e-9);
}

TEST(SharpeRatio, HandComputed) {
  std::vector<double> r{0.10, 0.20};
  EXPECT_NEAR(sharpe_ratio(r, 0.05), 1.4142135623730951, 1e-12);
  // 0.125 is exact in binary, so the deviations are exactly zero.
  std::vector<double> flat{0.125, 0.125, 0.125};
  try {
    sharpe_ratio(flat, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::zero_dispersion);
  }
}

TEST(SortinoRatio, DownsideUsesFullSampleCount) {
  std::vector<double> r{0.10, -0.05, 0.20};
  // shortfalls: 0, -0.05, 0 -> downside = sqrt(0.0025 / 3)
  double downside = std::sqrt(0.0025 / 3.0);
  EXPECT_NEAR(sortino_ratio(r, 0.0, 0.0), (0.25 / 3.0) / downside, 1e-12);
}

TEST(SortinoRatio, NoDownsideIsAnError) {
  std::vector<double> r{0.10, 0.20};
  try {
    sortino_ratio(r, 0.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::no_downside);
  }
}

TEST(ValidateForecastRecord, PointMustMatchParametricMean) {
  ForecastRecord rec;
  rec.metric = "net_profit";
  rec.period = "2024-Q2";
  rec.point = 1600.0;
  rec.distribution = PredictiveDistribution::gaussian(1601.0, 50.0);
  EXPECT_THROW(validate_forecast_record(rec), Error);
  validate_forecast_record(rec, /*allow_point_override=*/true);
  rec.distribution = PredictiveDistribution::gaussian(1600.0, 50.0);
  validate_forecast_record(rec);
}

TEST(ValidateForecastRecord, SentimentFeatureRange) {
  ForecastRecord rec;
  rec.metric = "equity";
  rec.point = 1.0;
  rec.features["sentiment"] = 1.2;
  EXPECT_THROW(validate_forecast_record(rec), Error);
  rec.features["sentiment"] = 0.8;
  validate_forecast_record(rec);
}

TEST(IntervalCoverage, EndpointsCountAsCovered) {
  ForecastRecord f;
  f.metric = "m";
  f.period = "p";
  f.point = 0.0;
  f.distribution = PredictiveDistribution::gaussian(0.0, 1.0);
  Interval iv = confidence_interval(*f.distribution, 0.95);
  std::vector<std::pair<ForecastRecord, ActualRecord>> pairs{
      {f, {"m", "p", "", iv.hi}},
      {f, {"m", "p", "", iv.hi + 1e-9}},
  };
  EXPECT_DOUBLE_EQ(interval_coverage(pairs, 0.95), 0.5);
}

TEST(IntervalCoverage, RequiresDistributions) {
  ForecastRecord f;
  f.metric = "m";
  f.point = 1.0;
  std::vector<std::pair<ForecastRecord, ActualRecord>> pairs{{f, {"m", "", "", 1.0}}};
  try {
    interval_coverage(pairs, 0.95);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::missing_distribution);
  }
}

TEST(Evaluate, EndToEndQuarterlyFixture) {
  auto forecasts = fixtures::point_forecasts();
  auto actuals = fixtures::realized_actuals();
  EvaluationReport rep = evaluate(forecasts, actuals);
  ASSERT_EQ(rep.metrics.size(), 3u);
  EXPECT_EQ(rep.metrics[0].metric, "total_assets");
  EXPECT_DOUBLE_EQ(*rep.metrics[0].mae, 50.0);
  EXPECT_DOUBLE_EQ(round_half_away(*rep.metrics[0].mape, 2), 0.33);
  EXPECT_DOUBLE_EQ(*rep.metrics[1].mae, 50.0);
  EXPECT_DOUBLE_EQ(round_half_away(*rep.metrics[1].mape, 2), 3.03);
  EXPECT_DOUBLE_EQ(*rep.metrics[2].mae, 20.0);
  EXPECT_DOUBLE_EQ(round_half_away(*rep.metrics[2].mape, 2), 0.25);
  // All three actuals sit inside their 95% intervals.
  ASSERT_TRUE(rep.coverage_fraction.has_value());
  EXPECT_DOUBLE_EQ(*rep.coverage_fraction, 1.0);
  ASSERT_TRUE(rep.metrics[1].records[0].interval.has_value());
  EXPECT_NEAR(rep.metrics[1].records[0].interval->lo, 1500.0, 0.01);
  EXPECT_NEAR(rep.metrics[1].records[0].interval->hi, 1700.0, 0.01);
  EXPECT_FALSE(rep.sharpe.has_value());
}

TEST(Evaluate, TightLevelDropsCoverage) {
  auto forecasts = fixtures::point_forecasts();
  auto actuals = fixtures::realized_actuals();
  EvaluateOptions options;
  options.level = 0.2;
  EvaluationReport rep = evaluate(forecasts, actuals, options);
  ASSERT_TRUE(rep.coverage_fraction.has_value());
  EXPECT_LT(*rep.coverage_fraction, 1.0);
}

TEST(Evaluate, PairingMustBeExactBothWays) {
  auto forecasts = fixtures::point_forecasts();
  auto actuals = fixtures::realized_actuals();
  auto extra = actuals;
  extra.push_back({"revenue", "2024-Q2", "million TRY", 1.0});
  try {
    evaluate(forecasts, extra);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::pairing_error);
    EXPECT_TRUE(e.input());
  }
  auto missing = std::vector<ActualRecord>(actuals.begin(), actuals.begin() + 2);
  EXPECT_THROW(evaluate(forecasts, missing), Error);
}

TEST(Evaluate, UnitMismatchIsAnError) {
  auto forecasts = fixtures::point_forecasts();
  auto actuals = fixtures::realized_actuals();
  actuals[0].unit = "billion TRY";
  try {
    evaluate(forecasts, actuals);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::unit_mismatch);
  }
}

TEST(Evaluate, DuplicateForecastIsAnError) {
  auto forecasts = fixtures::point_forecasts();
  forecasts.push_back(forecasts.front());
  EXPECT_THROW(evaluate(forecasts, {}), Error);
}

TEST(Evaluate, PortfolioReturnsBringRiskRatios) {
  auto forecasts = fixtures::point_forecasts();
  EvaluateOptions options;
  options.portfolio_returns = std::vector<double>{0.10, -0.05, 0.20, 0.03};
  options.risk_free = 0.02;
  EvaluationReport rep = evaluate(forecasts, {}, options);
  ASSERT_TRUE(rep.sharpe.has_value());
  ASSERT_TRUE(rep.sortino.has_value());
  EXPECT_GT(*rep.sortino, *rep.sharpe);
  EXPECT_FALSE(rep.coverage_fraction.has_value());
}
