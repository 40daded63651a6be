#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskrank/errors.hpp"
#include "riskrank/stats.hpp"

namespace riskrank {

// Uncertainty around a point forecast: either a Gaussian (mean, std) or a
// bag of Monte-Carlo samples.
struct PredictiveDistribution {
  enum class Kind { parametric, empirical };
  Kind kind = Kind::parametric;
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> samples;

  static PredictiveDistribution gaussian(double mean, double std) {
    require(std::isfinite(mean) && std::isfinite(std), errc::schema_error,
            "distribution parameters must be finite");
    require(std >= 0.0, errc::schema_error, "standard deviation must be non-negative");
    PredictiveDistribution d;
    d.kind = Kind::parametric;
    d.mu = mean;
    d.sigma = std;
    return d;
  }

  static PredictiveDistribution empirical(std::vector<double> samples) {
    require(!samples.empty(), errc::schema_error, "empirical distribution needs samples");
    for (double x : samples)
      require(std::isfinite(x), errc::schema_error, "samples must be finite");
    PredictiveDistribution d;
    d.kind = Kind::empirical;
    d.samples = std::move(samples);
    return d;
  }

  bool parametric() const { return kind == Kind::parametric; }

  double center() const { return parametric() ? mu : riskrank::mean(samples); }

  double quantile(double p) const {
    if (parametric()) return mu + sigma * normal_quantile(p);
    return quantile_linear(samples, p);
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Symmetric two-sided interval: parametric mean +/- z*std, empirical via the
// matching tail quantiles.
inline Interval confidence_interval(const PredictiveDistribution& d, double level) {
  require(level > 0.0 && level < 1.0, errc::bad_level,
          "confidence level must lie strictly between 0 and 1");
  if (d.parametric()) {
    double half = two_sided_z(level) * d.sigma;
    return {d.mu - half, d.mu + half};
  }
  return {quantile_linear(d.samples, 0.5 * (1.0 - level)),
          quantile_linear(d.samples, 0.5 * (1.0 + level))};
}

// Collapse Monte-Carlo draws to a parametric summary (n-1 denominator).
inline PredictiveDistribution aggregate_mc_samples(std::span<const double> samples) {
  require(samples.size() >= 2, errc::too_few_samples,
          "aggregation needs at least two samples");
  return PredictiveDistribution::gaussian(mean(samples), sample_stddev(samples));
}

struct ScenarioTriple {
  double worst = 0.0;
  double base = 0.0;
  double best = 0.0;
};

// Pessimistic / central / optimistic values at the 10th, 50th (mean for the
// parametric form), and 90th percentiles.
inline ScenarioTriple quantile_scenarios(const PredictiveDistribution& d) {
  ScenarioTriple t;
  if (d.parametric()) {
    double swing = 1.281552 * d.sigma;
    t.worst = d.mu - swing;
    t.base = d.mu;
    t.best = d.mu + swing;
  } else {
    t.worst = quantile_linear(d.samples, 0.10);
    t.base = quantile_linear(d.samples, 0.50);
    t.best = quantile_linear(d.samples, 0.90);
  }
  return t;
}

struct ErrorMetrics {
  double mae = 0.0;
  double mape = 0.0;  // percent
};

// Mean absolute error and mean absolute percentage error over
// (point forecast, actual) pairs. MAPE divides by the actual.
inline ErrorMetrics error_metrics(std::span<const std::pair<double, double>> pairs) {
  require(!pairs.empty(), errc::empty_input, "error metrics over no pairs");
  double mae = 0.0, mape = 0.0;
  for (const auto& [point, actual] : pairs) {
    double err = std::fabs(actual - point);
    mae += err;
    require(actual != 0.0, errc::zero_actual,
            "percentage error undefined for a zero actual value");
    mape += err / std::fabs(actual);
  }
  double n = static_cast<double>(pairs.size());
  return {mae / n, 100.0 * mape / n};
}

// Loss not expected to be exceeded with the given confidence, measured from
// the baseline (defaults to the distribution center):
//   VaR = baseline - q_{1-level}.
inline double value_at_risk(const PredictiveDistribution& d, double level,
                            std::optional<double> baseline = std::nullopt) {
  require(level > 0.0 && level < 1.0, errc::bad_level,
          "risk level must lie strictly between 0 and 1");
  double base = baseline ? *baseline : d.center();
  return base - d.quantile(1.0 - level);
}

inline double sharpe_ratio(std::span<const double> returns, double risk_free) {
  require(returns.size() >= 2, errc::too_few_samples, "Sharpe needs at least two returns");
  double sd = sample_stddev(returns);
  require(sd > 0.0, errc::zero_dispersion, "Sharpe undefined for constant returns");
  return (mean(returns) - risk_free) / sd;
}

// Downside deviation uses every observation: returns at or above the target
// contribute zero, and the mean is taken over the full sample.
inline double sortino_ratio(std::span<const double> returns, double risk_free, double target) {
  require(returns.size() >= 2, errc::too_few_samples, "Sortino needs at least two returns");
  double ss = 0.0;
  bool any_below = false;
  for (double r : returns) {
    double short_fall = std::min(0.0, r - target);
    if (short_fall < 0.0) any_below = true;
    ss += short_fall * short_fall;
  }
  require(any_below, errc::no_downside, "no return falls below the target");
  double downside = std::sqrt(ss / static_cast<double>(returns.size()));
  return (mean(returns) - risk_free) / downside;
}

struct ForecastRecord {
  std::string metric;
  std::string period;
  std::string unit;
  double point = 0.0;
  std::optional<PredictiveDistribution> distribution;
  std::map<std::string, double> features;
};

struct ActualRecord {
  std::string metric;
  std::string period;
  std::string unit;
  double value = 0.0;
};

// A parametric distribution is expected to be centered on the point forecast;
// a drift beyond 1e-9 is a data error unless the caller opts out.
inline void validate_forecast_record(const ForecastRecord& rec, bool allow_point_override = false) {
  require(std::isfinite(rec.point), errc::schema_error,
          "non-finite point forecast for " + rec.metric + "/" + rec.period);
  if (!allow_point_override && rec.distribution && rec.distribution->parametric())
    require(std::fabs(rec.point - rec.distribution->mu) <= 1e-9, errc::schema_error,
            "point forecast disagrees with distribution mean for " + rec.metric + "/" +
                rec.period + " (pass the override flag if intentional)");
  auto it = rec.features.find("sentiment");
  if (it != rec.features.end())
    require(it->second >= -1.0 && it->second <= 1.0, errc::bad_range,
            "sentiment feature must lie in [-1, 1] for " + rec.metric + "/" + rec.period);
}

// Fraction of actuals falling inside the level-confidence interval
// (endpoints inclusive).
inline double interval_coverage(
    std::span<const std::pair<ForecastRecord, ActualRecord>> records, double level) {
  require(!records.empty(), errc::empty_input, "coverage over no records");
  size_t covered = 0;
  for (const auto& [f, a] : records) {
    require(f.distribution.has_value(), errc::missing_distribution,
            "record " + f.metric + "/" + f.period + " has no distribution");
    Interval iv = confidence_interval(*f.distribution, level);
    if (a.value >= iv.lo && a.value <= iv.hi) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(records.size());
}

struct RecordEval {
  std::string period;
  double point = 0.0;
  std::optional<double> dist_mean;
  std::optional<double> dist_std;
  std::optional<Interval> interval;
  std::optional<double> var;
  std::optional<double> actual;
  std::optional<bool> covered;
};

struct MetricEval {
  std::string metric;
  std::string unit;
  std::vector<RecordEval> records;
  std::optional<double> mae;
  std::optional<double> mape;
};

struct EvaluationReport {
  double level = 0.95;
  std::vector<MetricEval> metrics;
  std::optional<double> coverage_fraction;
  std::optional<double> sharpe;
  std::optional<double> sortino;
};

struct EvaluateOptions {
  double level = 0.95;
  bool allow_point_override = false;
  std::optional<std::vector<double>> portfolio_returns;
  double risk_free = 0.0;
  double target = 0.0;
};

// Pair forecasts with actuals by (metric, period) and assemble the full
// report. When actuals are supplied at all, the pairing must be exact in both
// directions; partially overlapping files are treated as a data error.
inline EvaluationReport evaluate(std::span<const ForecastRecord> forecasts,
                                 std::span<const ActualRecord> actuals,
                                 const EvaluateOptions& options = {}) {
  require(!forecasts.empty(), errc::empty_input, "no forecast records");
  require(options.level > 0.0 && options.level < 1.0, errc::bad_level,
          "confidence level must lie strictly between 0 and 1");

  std::map<std::pair<std::string, std::string>, const ActualRecord*> actual_by_key;
  for (const auto& a : actuals) {
    auto key = std::make_pair(a.metric, a.period);
    require(!actual_by_key.count(key), errc::schema_error,
            "duplicate actual for " + a.metric + "/" + a.period);
    actual_by_key[key] = &a;
  }

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::string> metric_order;
  std::map<std::string, MetricEval> by_metric;
  std::vector<std::pair<ForecastRecord, ActualRecord>> covered_pairs;
  bool pair_actuals = !actuals.empty();

  for (const auto& f : forecasts) {
    validate_forecast_record(f, options.allow_point_override);
    auto key = std::make_pair(f.metric, f.period);
    require(seen.insert(key).second, errc::schema_error,
            "duplicate forecast for " + f.metric + "/" + f.period);
    if (!by_metric.count(f.metric)) {
      metric_order.push_back(f.metric);
      by_metric[f.metric] = MetricEval{f.metric, f.unit, {}, std::nullopt, std::nullopt};
    }
    MetricEval& me = by_metric[f.metric];
    RecordEval re;
    re.period = f.period;
    re.point = f.point;
    if (f.distribution) {
      re.dist_mean = f.distribution->center();
      if (f.distribution->parametric()) re.dist_std = f.distribution->sigma;
      re.interval = confidence_interval(*f.distribution, options.level);
      re.var = value_at_risk(*f.distribution, options.level);
    }
    if (pair_actuals) {
      auto it = actual_by_key.find(key);
      require(it != actual_by_key.end(), errc::pairing_error,
              "forecast " + f.metric + "/" + f.period + " has no matching actual");
      const ActualRecord& a = *it->second;
      require(a.unit == f.unit, errc::unit_mismatch,
              "unit mismatch for " + f.metric + "/" + f.period + ": forecast in \"" + f.unit +
                  "\", actual in \"" + a.unit + "\"");
      re.actual = a.value;
      if (re.interval) {
        re.covered = a.value >= re.interval->lo && a.value <= re.interval->hi;
        covered_pairs.emplace_back(f, a);
      }
      actual_by_key.erase(it);
    }
    me.records.push_back(std::move(re));
  }
  if (pair_actuals && !actual_by_key.empty()) {
    const auto& key = actual_by_key.begin()->first;
    raise(errc::pairing_error,
          "actual " + key.first + "/" + key.second + " has no matching forecast");
  }

  EvaluationReport report;
  report.level = options.level;
  for (const auto& name : metric_order) {
    MetricEval& me = by_metric[name];
    if (pair_actuals) {
      std::vector<std::pair<double, double>> pairs;
      pairs.reserve(me.records.size());
      for (const auto& r : me.records) pairs.emplace_back(r.point, *r.actual);
      ErrorMetrics em = error_metrics(pairs);
      me.mae = em.mae;
      me.mape = em.mape;
    }
    report.metrics.push_back(std::move(me));
  }
  if (!covered_pairs.empty())
    report.coverage_fraction = interval_coverage(covered_pairs, options.level);
  if (options.portfolio_returns) {
    report.sharpe = sharpe_ratio(*options.portfolio_returns, options.risk_free);
    report.sortino = sortino_ratio(*options.portfolio_returns, options.risk_free, options.target);
  }
  return report;
}

}  // namespace riskrank
