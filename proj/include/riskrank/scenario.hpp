#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskrank/errors.hpp"
#include "riskrank/forecast.hpp"
#include "riskrank/stats.hpp"

namespace riskrank {

// Percent change of v against base, kept raw; display rounding is a separate
// step so stored values stay exact.
inline double percent_change(double base, double v) {
  require(base != 0.0, errc::zero_base, "percent change against a zero base");
  return (100.0 * (v - base)) / base;
}

// Two-decimal display form, half away from zero (1650 vs 1600 -> +3.13).
inline double display_percent(double raw) { return round_half_away(raw, 2); }

// An ordered set of driver settings to sweep, e.g. inflation 8..16%.
struct DriverSweep {
  std::string driver;
  std::string unit;
  std::vector<double> values;

  void validate() const {
    require(!driver.empty(), errc::schema_error, "sweep has no driver name");
    require(!values.empty(), errc::schema_error, "sweep has no values");
    for (size_t i = 1; i < values.size(); ++i) {
      bool increasing = values[1] > values[0];
      require(increasing ? values[i] > values[i - 1] : values[i] < values[i - 1],
              errc::schema_error, "sweep values must be strictly monotone");
    }
  }
};

// One (driver, metric) response: either a piecewise-linear lookup over knots
// or a linear elasticity around a reference driver value.
struct ResponseEntry {
  enum class Kind { lookup, linear };
  std::string driver;
  std::string driver_unit;
  std::string metric;
  std::string metric_unit;
  Kind kind = Kind::lookup;
  std::vector<std::pair<double, double>> knots;  // (driver value, metric value), x strictly increasing
  double base = 0.0;   // linear: value at ref
  double slope = 0.0;  // linear: metric units per driver unit
  double ref = 0.0;    // linear: driver value the base is anchored at

  void validate() const {
    require(!driver.empty() && !metric.empty(), errc::schema_error,
            "response entry missing driver or metric name");
    if (kind == Kind::lookup) {
      require(knots.size() >= 2, errc::schema_error,
              "lookup entry for " + driver + "/" + metric + " needs at least two knots");
      for (size_t i = 1; i < knots.size(); ++i)
        require(knots[i].first > knots[i - 1].first, errc::schema_error,
                "lookup knots for " + driver + "/" + metric +
                    " must be strictly increasing in the driver");
    }
  }
};

struct ResponseCell {
  double value = 0.0;
  bool interpolated = false;  // true when not an exact knot (or extrapolated)
};

// Knot hits are detected by exact floating equality: sweep grids and fixture
// knots come from the same decimal text, so matching values are bit-equal.
inline ResponseCell evaluate_response(const ResponseEntry& e, double x,
                                      bool allow_extrapolate = false) {
  if (e.kind == ResponseEntry::Kind::linear) return {e.base + e.slope * (x - e.ref), false};
  const auto& ks = e.knots;
  if (x < ks.front().first || x > ks.back().first) {
    require(allow_extrapolate, errc::extrapolation_outside_domain,
            "driver value outside the " + e.driver + "/" + e.metric + " lookup domain");
    const auto& a = x < ks.front().first ? ks[0] : ks[ks.size() - 2];
    const auto& b = x < ks.front().first ? ks[1] : ks[ks.size() - 1];
    double t = (x - a.first) / (b.first - a.first);
    return {a.second + t * (b.second - a.second), true};
  }
  for (const auto& [kx, ky] : ks)
    if (kx == x) return {ky, false};
  auto hi = std::upper_bound(ks.begin(), ks.end(), x,
                             [](double v, const auto& k) { return v < k.first; });
  auto lo = hi - 1;
  double t = (x - lo->first) / (hi->first - lo->first);
  return {lo->second + t * (hi->second - lo->second), true};
}

// A full what-if model: response entries plus the base metric row and, for
// verbatim summaries, an explicit map of which sweep row each summary cell
// quotes. `driver_anchor` records each driver's base setting; percent changes
// in summaries are measured against the model evaluated there, which matters
// when a sweep's own base row drifts from the global base values.
struct ResponseModel {
  std::string name;
  std::vector<ResponseEntry> entries;
  std::vector<std::string> metric_order;                  // display order
  std::map<std::string, double> base;                     // metric -> base value
  std::map<std::string, double> driver_anchor;            // driver -> base setting
  std::map<std::string, std::map<std::string, double>> row_picks;  // driver -> metric -> x

  const ResponseEntry* find(const std::string& driver, const std::string& metric) const {
    for (const auto& e : entries)
      if (e.driver == driver && e.metric == metric) return &e;
    return nullptr;
  }

  std::vector<std::string> drivers() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (std::find(out.begin(), out.end(), e.driver) == out.end()) out.push_back(e.driver);
    return out;
  }

  std::vector<std::string> metrics_for(const std::string& driver) const {
    std::vector<std::string> out;
    for (const auto& name : metric_order)
      if (find(driver, name)) out.push_back(name);
    for (const auto& e : entries)
      if (e.driver == driver && std::find(out.begin(), out.end(), e.metric) == out.end())
        out.push_back(e.metric);
    return out;
  }

  // Model response at a driver's anchor setting, one value per metric.
  std::map<std::string, double> anchor_values(const std::string& driver) const {
    auto it = driver_anchor.find(driver);
    require(it != driver_anchor.end(), errc::schema_error,
            "model declares no anchor setting for driver \"" + driver + "\"");
    std::map<std::string, double> out;
    for (const auto& e : entries)
      if (e.driver == driver) out[e.metric] = evaluate_response(e, it->second, true).value;
    return out;
  }

  // Per-driver anchor metric maps for every driver that declares an anchor.
  std::map<std::string, std::map<std::string, double>> all_anchor_values() const {
    std::map<std::string, std::map<std::string, double>> out;
    for (const auto& [driver, x] : driver_anchor) out[driver] = anchor_values(driver);
    return out;
  }

  // Default sweep grid for a driver: the union of its entries' knots.
  DriverSweep knot_sweep(const std::string& driver) const {
    DriverSweep sweep;
    sweep.driver = driver;
    std::vector<double> xs;
    for (const auto& e : entries) {
      if (e.driver != driver) continue;
      if (sweep.unit.empty()) sweep.unit = e.driver_unit;
      if (e.kind == ResponseEntry::Kind::lookup)
        for (const auto& k : e.knots) xs.push_back(k.first);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    require(!xs.empty(), errc::uncovered_pair,
            "model has no lookup entries for driver \"" + driver + "\"");
    sweep.values = std::move(xs);
    return sweep;
  }

  void validate() const {
    require(!entries.empty(), errc::schema_error, "response model has no entries");
    for (const auto& e : entries) e.validate();
    for (size_t i = 0; i < entries.size(); ++i)
      for (size_t j = i + 1; j < entries.size(); ++j)
        require(entries[i].driver != entries[j].driver || entries[i].metric != entries[j].metric,
                errc::schema_error,
                "duplicate response entry for " + entries[i].driver + "/" + entries[i].metric);
  }
};

struct ResponseRow {
  double driver_value = 0.0;
  std::vector<ResponseCell> cells;  // parallel to ResponseTable::metrics
};

struct ResponseTable {
  std::string driver;
  std::string driver_unit;
  std::vector<std::string> metrics;
  std::vector<std::string> metric_units;
  std::vector<ResponseRow> rows;
};

// Evaluate every (sweep value, metric) pair. Values equal to lookup knots
// reproduce the knot bit-exactly.
inline ResponseTable run_sweep(const ResponseModel& model, const DriverSweep& sweep,
                               std::span<const std::string> metrics,
                               bool allow_extrapolate = false) {
  model.validate();
  sweep.validate();
  require(!metrics.empty(), errc::empty_input, "sweep requested with no metrics");
  ResponseTable table;
  table.driver = sweep.driver;
  table.driver_unit = sweep.unit;
  std::vector<const ResponseEntry*> cols;
  for (const auto& m : metrics) {
    const ResponseEntry* e = model.find(sweep.driver, m);
    require(e != nullptr, errc::uncovered_pair,
            "model has no entry for driver \"" + sweep.driver + "\" and metric \"" + m + "\"");
    cols.push_back(e);
    table.metrics.push_back(m);
    table.metric_units.push_back(e->metric_unit);
    if (table.driver_unit.empty()) table.driver_unit = e->driver_unit;
  }
  for (double x : sweep.values) {
    ResponseRow row;
    row.driver_value = x;
    for (const ResponseEntry* e : cols) row.cells.push_back(evaluate_response(*e, x, allow_extrapolate));
    table.rows.push_back(std::move(row));
  }
  return table;
}

enum class SummarySelector { max_abs_delta, verbatim };

inline const char* summary_selector_name(SummarySelector s) {
  return s == SummarySelector::max_abs_delta ? "max-delta" : "verbatim";
}

inline SummarySelector parse_summary_selector(const std::string& s) {
  if (s == "max-delta") return SummarySelector::max_abs_delta;
  if (s == "verbatim") return SummarySelector::verbatim;
  raise(errc::bad_argument, "selector must be max-delta or verbatim; got \"" + s + "\"");
}

struct SummaryCell {
  double driver_value = 0.0;
  double value = 0.0;
  double anchor = 0.0;  // the value percent change is measured against
  double pct_raw = 0.0;
  double pct_display = 0.0;
};

struct SummaryColumn {
  std::string driver;
  std::vector<SummaryCell> cells;  // parallel to SensitivitySummary::metrics
};

struct SensitivitySummary {
  std::vector<std::string> metrics;
  std::vector<std::string> metric_units;
  std::vector<double> base;  // parallel to metrics
  std::vector<SummaryColumn> columns;
  SummarySelector selector = SummarySelector::max_abs_delta;
};

// Boil each driver table down to one representative value per metric. The
// default picks the row moving the metric furthest from its anchor (earliest
// row on ties); the verbatim selector quotes rows from an explicit pick map.
// Percent changes are measured against the driver's anchor values when given
// (the model response at the driver's base setting), else the global base.
inline SensitivitySummary summarize(
    std::span<const ResponseTable> tables, const std::map<std::string, double>& base,
    SummarySelector selector = SummarySelector::max_abs_delta,
    const std::map<std::string, std::map<std::string, double>>* row_picks = nullptr,
    const std::map<std::string, std::map<std::string, double>>* anchors = nullptr) {
  require(!tables.empty(), errc::empty_input, "summary over no tables");
  SensitivitySummary out;
  out.selector = selector;
  out.metrics = tables.front().metrics;
  out.metric_units = tables.front().metric_units;
  for (const auto& m : out.metrics) {
    auto it = base.find(m);
    require(it != base.end(), errc::metric_mismatch, "no base value for metric \"" + m + "\"");
    out.base.push_back(it->second);
  }
  for (const auto& table : tables) {
    require(table.metrics == out.metrics, errc::metric_mismatch,
            "tables do not share one metric set (driver \"" + table.driver + "\" differs)");
    require(!table.rows.empty(), errc::empty_input,
            "table for driver \"" + table.driver + "\" has no rows");
    const std::map<std::string, double>* anchor_row = nullptr;
    if (anchors != nullptr) {
      auto ait = anchors->find(table.driver);
      if (ait != anchors->end()) anchor_row = &ait->second;
    }
    SummaryColumn col;
    col.driver = table.driver;
    for (size_t j = 0; j < out.metrics.size(); ++j) {
      double anchor = out.base[j];
      if (anchor_row != nullptr) {
        auto mit = anchor_row->find(out.metrics[j]);
        require(mit != anchor_row->end(), errc::metric_mismatch,
                "anchor row for driver \"" + table.driver + "\" is missing metric \"" +
                    out.metrics[j] + "\"");
        anchor = mit->second;
      }
      const ResponseRow* pick = nullptr;
      if (selector == SummarySelector::max_abs_delta) {
        double best = -1.0;
        for (const auto& row : table.rows) {
          double delta = std::fabs(row.cells[j].value - anchor);
          if (delta > best) {
            best = delta;
            pick = &row;
          }
        }
      } else {
        require(row_picks != nullptr, errc::bad_argument,
                "verbatim summary needs a row-pick map");
        auto dit = row_picks->find(table.driver);
        require(dit != row_picks->end(), errc::schema_error,
                "row-pick map has no entry for driver \"" + table.driver + "\"");
        auto mit = dit->second.find(out.metrics[j]);
        require(mit != dit->second.end(), errc::schema_error,
                "row-pick map has no entry for " + table.driver + "/" + out.metrics[j]);
        for (const auto& row : table.rows)
          if (row.driver_value == mit->second) pick = &row;
        require(pick != nullptr, errc::schema_error,
                "row-pick for " + table.driver + "/" + out.metrics[j] +
                    " names a driver value absent from the sweep");
      }
      SummaryCell cell;
      cell.driver_value = pick->driver_value;
      cell.value = pick->cells[j].value;
      cell.anchor = anchor;
      cell.pct_raw = percent_change(anchor, cell.value);
      cell.pct_display = display_percent(cell.pct_raw);
      col.cells.push_back(cell);
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

// One metric's pessimistic / central / optimistic outlook, either supplied
// by the forecasting model or derived from a predictive distribution. The
// two origins are never mixed silently; provenance travels with the row.
struct MetricScenario {
  std::string metric;
  std::string unit;
  ScenarioTriple triple;
  std::string provenance;  // "supplied" or "derived"
};

inline void validate_scenarios(std::span<const MetricScenario> scenarios) {
  require(!scenarios.empty(), errc::empty_input, "no scenario rows");
  for (const auto& s : scenarios)
    require(s.triple.worst <= s.triple.base && s.triple.base <= s.triple.best,
            errc::ordering_violation,
            "scenario for " + s.metric + " is not ordered worst <= base <= best");
}

}  // namespace riskrank
