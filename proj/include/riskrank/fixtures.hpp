#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskrank/decision.hpp"
#include "riskrank/forecast.hpp"
#include "riskrank/scenario.hpp"

// Bundled demonstration dataset: one defense-sector firm's 2024-Q2 forecast
// sheet (point forecasts, intervals, scenario triples, driver sweeps) and the
// five-model expert evaluation matrix with its published weight vector. The
// same data ships as files under fixtures/; these builders are the reference
// the files are generated from.

namespace riskrank::fixtures {

// 5 models x 9 benefit criteria expert evaluation matrix, singleton hesitant
// cells. The source sheet records BNN/C4 as (0.92, 0.12), which violates
// mu + nu <= 1; the fixture ships the boundary repair (0.92, 0.08).
inline DecisionProblem model_evaluation_matrix() {
  DecisionProblem p;
  p.alternatives = {"TabNet", "Transformer", "DRL", "GNN", "BNN"};
  const char* names[] = {"Prediction Accuracy",
                         "Risk Awareness",
                         "Forecasted Value Proximity",
                         "Confidence Interval Narrowness",
                         "Computational Efficiency",
                         "Interpretability",
                         "Performance Improvement",
                         "Stability",
                         "Quality of Risk-Adjusted Signal"};
  for (int j = 0; j < 9; ++j)
    p.criteria.push_back({"C" + std::to_string(j + 1), names[j], CriterionKind::benefit});
  const double data[5][9][2] = {
      {{0.92, 0.05}, {0.90, 0.07}, {0.95, 0.04}, {0.90, 0.06}, {0.60, 0.30},
       {0.88, 0.05}, {0.70, 0.15}, {0.85, 0.10}, {0.00, 1.00}},
      {{0.90, 0.08}, {0.75, 0.20}, {0.92, 0.06}, {0.88, 0.08}, {0.40, 0.50},
       {0.75, 0.20}, {0.70, 0.15}, {0.80, 0.15}, {0.00, 1.00}},
      {{0.87, 0.10}, {0.88, 0.08}, {0.80, 0.10}, {0.75, 0.15}, {0.30, 0.60},
       {0.60, 0.30}, {0.85, 0.05}, {0.50, 0.45}, {0.85, 0.10}},
      {{0.88, 0.10}, {0.78, 0.17}, {0.85, 0.12}, {0.78, 0.12}, {0.50, 0.40},
       {0.70, 0.20}, {0.60, 0.25}, {0.60, 0.30}, {0.00, 1.00}},
      {{0.85, 0.10}, {0.95, 0.04}, {0.82, 0.12}, {0.92, 0.08}, {0.35, 0.55},
       {0.65, 0.25}, {0.75, 0.15}, {0.88, 0.08}, {0.70, 0.20}},
  };
  for (int i = 0; i < 5; ++i) {
    std::vector<HesitantIfn> row;
    for (int j = 0; j < 9; ++j) row.push_back({{make_ifn(data[i][j][0], data[i][j][1])}});
    p.cells.push_back(std::move(row));
  }
  p.validate();
  return p;
}

// The weight vector published alongside the matrix (entropy formula behind it
// unrecorded; sums to 0.9999 as printed).
inline std::map<std::string, double> published_weights() {
  return {{"C1", 0.1209}, {"C2", 0.1164}, {"C3", 0.1170}, {"C4", 0.1094}, {"C5", 0.1018},
          {"C6", 0.1069}, {"C7", 0.0922}, {"C8", 0.1113}, {"C9", 0.1240}};
}

namespace detail {

inline ResponseEntry lookup_entry(const std::string& driver, const std::string& driver_unit,
                                  const std::string& metric,
                                  std::vector<std::pair<double, double>> knots) {
  ResponseEntry e;
  e.driver = driver;
  e.driver_unit = driver_unit;
  e.metric = metric;
  e.metric_unit = "million TRY";
  e.kind = ResponseEntry::Kind::lookup;
  e.knots = std::move(knots);
  return e;
}

inline void add_driver(ResponseModel& m, const std::string& driver, const std::string& unit,
                       std::vector<double> xs, std::vector<double> ta, std::vector<double> np,
                       std::vector<double> eq) {
  auto zip = [&xs](const std::vector<double>& ys) {
    std::vector<std::pair<double, double>> knots;
    for (size_t i = 0; i < xs.size(); ++i) knots.emplace_back(xs[i], ys[i]);
    return knots;
  };
  m.entries.push_back(lookup_entry(driver, unit, "total_assets", zip(ta)));
  m.entries.push_back(lookup_entry(driver, unit, "net_profit", zip(np)));
  m.entries.push_back(lookup_entry(driver, unit, "equity", zip(eq)));
}

}  // namespace detail

// Full 2024-Q2 sweep model: four macro drivers against three statement
// metrics, as lookup tables over the published sweep grids. Anchors mark each
// driver's base setting; note the sentiment sweep's anchor row carries equity
// 8060 while the global base is 8100 (a quirk preserved from the source
// sheet). Row picks encode which sweep row the one-line summary quotes.
inline ResponseModel sweep_model() {
  ResponseModel m;
  m.name = "paper-2024q2";
  m.metric_order = {"total_assets", "net_profit", "equity"};
  m.base = {{"total_assets", 15150.0}, {"net_profit", 1600.0}, {"equity", 8100.0}};
  detail::add_driver(m, "inflation_rate", "percent", {8, 10, 12, 14, 16},
                     {15150, 15200, 15300, 15400, 15500}, {1600, 1630, 1670, 1710, 1750},
                     {8100, 8120, 8140, 8160, 8180});
  detail::add_driver(m, "interest_rate", "percent", {6, 8, 10, 12},
                     {15150, 15200, 15250, 15300}, {1600, 1590, 1560, 1520},
                     {8100, 8090, 8070, 8050});
  detail::add_driver(m, "sentiment_score", "score", {0.5, 0.6, 0.7, 0.8, 0.9},
                     {15000, 15050, 15100, 15150, 15200}, {1500, 1530, 1560, 1600, 1650},
                     {8000, 8020, 8040, 8060, 8080});
  detail::add_driver(m, "exchange_rate", "TRY per USD", {18, 20, 22},
                     {15150, 15200, 15250}, {1600, 1630, 1670}, {8100, 8120, 8140});
  m.driver_anchor = {{"inflation_rate", 8.0},
                     {"interest_rate", 6.0},
                     {"sentiment_score", 0.8},
                     {"exchange_rate", 18.0}};
  m.row_picks = {
      {"inflation_rate", {{"total_assets", 10.0}, {"net_profit", 12.0}, {"equity", 14.0}}},
      {"interest_rate", {{"total_assets", 12.0}, {"net_profit", 12.0}, {"equity", 12.0}}},
      {"sentiment_score", {{"total_assets", 0.9}, {"net_profit", 0.9}, {"equity", 0.9}}},
      {"exchange_rate", {{"total_assets", 22.0}, {"net_profit", 22.0}, {"equity", 22.0}}},
  };
  m.validate();
  return m;
}

// Single-driver slices of the sweep model, addressable as fixtures by name.
inline ResponseModel single_driver_model(const std::string& driver, const std::string& name) {
  ResponseModel full = sweep_model();
  ResponseModel m;
  m.name = name;
  m.metric_order = full.metric_order;
  m.base = full.base;
  for (const auto& e : full.entries)
    if (e.driver == driver) m.entries.push_back(e);
  auto ait = full.driver_anchor.find(driver);
  if (ait != full.driver_anchor.end()) m.driver_anchor[driver] = ait->second;
  auto rit = full.row_picks.find(driver);
  if (rit != full.row_picks.end()) m.row_picks[driver] = rit->second;
  m.validate();
  return m;
}

// Resolve "fixtures:<name>" style references.
inline std::optional<ResponseModel> builtin_response_model(const std::string& name) {
  if (name == "paper-2024q2") return sweep_model();
  if (name == "table6") return single_driver_model("inflation_rate", "table6");
  if (name == "table7") return single_driver_model("interest_rate", "table7");
  if (name == "table8") return single_driver_model("sentiment_score", "table8");
  if (name == "table9") return single_driver_model("exchange_rate", "table9");
  return std::nullopt;
}

// 2024-Q2 supplied scenario triples (worst / base / best).
inline std::vector<MetricScenario> scenario_triples() {
  return {
      {"total_assets", "million TRY", {15050, 15150, 15250}, "supplied"},
      {"net_profit", "million TRY", {1400, 1600, 1750}, "supplied"},
      {"equity", "million TRY", {8000, 8100, 8150}, "supplied"},
  };
}

// 2024-Q2 point forecasts with their 95% interval half-widths expressed as
// Gaussian std values (half-width / 1.959964).
inline std::vector<ForecastRecord> point_forecasts() {
  auto rec = [](const std::string& metric, double point, double std) {
    ForecastRecord r;
    r.metric = metric;
    r.period = "2024-Q2";
    r.unit = "million TRY";
    r.point = point;
    r.distribution = PredictiveDistribution::gaussian(point, std);
    return r;
  };
  return {rec("total_assets", 15150, 150.0 / 1.959964), rec("net_profit", 1600, 100.0 / 1.959964),
          rec("equity", 8100, 80.0 / 1.959964)};
}

inline std::vector<ActualRecord> realized_actuals() {
  return {{"total_assets", "2024-Q2", "million TRY", 15200},
          {"net_profit", "2024-Q2", "million TRY", 1650},
          {"equity", "2024-Q2", "million TRY", 8120}};
}

}  // namespace riskrank::fixtures
