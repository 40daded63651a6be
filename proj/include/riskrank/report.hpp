#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskrank/data_io.hpp"
#include "riskrank/decision.hpp"
#include "riskrank/edas_marcos.hpp"
#include "riskrank/entropy.hpp"
#include "riskrank/forecast.hpp"
#include "riskrank/graph.hpp"
#include "riskrank/preprocess.hpp"
#include "riskrank/scenario.hpp"

namespace riskrank {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_output_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  raise(errc::bad_argument, "format must be table, csv, or json; got \"" + s + "\"");
}

inline std::string fmt_fixed(double x, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  return buf;
}

// Signed two-decimal percent: "+4.38%", "-5.00%", "0.00%" at zero.
inline std::string fmt_percent(double display_value) {
  if (display_value == 0.0) return "0.00%";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%+.2f%%", display_value);
  return buf;
}

// Minimal fixed-width text table: left-aligned cells, two-space gutters, a
// dash rule under the header.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<size_t> width(header_.size(), 0);
    auto widen = [&width](const std::vector<std::string>& row) {
      for (size_t i = 0; i < row.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], row[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
      for (size_t i = 0; i < width.size(); ++i) {
        std::string cell = i < row.size() ? row[i] : "";
        out += cell;
        if (i + 1 < width.size()) out += std::string(width[i] - cell.size() + 2, ' ');
      }
      out += "\n";
    };
    emit(header_);
    size_t total = 0;
    for (size_t i = 0; i < width.size(); ++i) total += width[i] + (i + 1 < width.size() ? 2 : 0);
    out += std::string(total, '-') + "\n";
    for (const auto& r : rows_) emit(r);
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// ---------------------------------------------------------------------------
// Ranking reports.
// ---------------------------------------------------------------------------

inline json ranking_to_json(const DecisionProblem& problem, const RankingResult& r,
                            const std::string& weights_source, const RankOptions& options) {
  json j;
  j["alternatives"] = problem.alternatives;
  json crits = json::array();
  for (const auto& c : problem.criteria)
    crits.push_back({{"id", c.id}, {"kind", criterion_kind_name(c.kind)}});
  j["criteria"] = std::move(crits);
  json weights;
  for (size_t i = 0; i < problem.criteria.size(); ++i)
    weights[problem.criteria[i].id] = r.weights.values[i];
  j["weights"] = std::move(weights);
  j["weights_source"] = weights_source;
  j["variant"] = edas_variant_name(options.variant);
  if (weights_source == "entropy") j["measure"] = entropy_measure_name(options.measure);
  json averages = json::array();
  for (const auto& a : r.edas.averages) averages.push_back({{"mu", a.mu}, {"nu", a.nu}});
  j["edas"] = {{"averages", std::move(averages)}, {"pda", r.edas.pda},  {"nda", r.edas.nda},
               {"pdas", r.edas.pdas},             {"ndas", r.edas.ndas}, {"s", r.edas.s}};
  j["marcos"] = {{"i_star", r.marcos.i_star},   {"i_minus", r.marcos.i_minus},
                 {"k_plus", r.marcos.k_plus},   {"k_minus", r.marcos.k_minus},
                 {"u", r.marcos.u},             {"ranks", r.marcos.ranks},
                 {"order", r.marcos.order}};
  return j;
}

inline std::string render_ranking_table(const DecisionProblem& problem, const RankingResult& r) {
  std::string out;
  TextTable weights({"criterion", "kind", "weight"});
  for (size_t j = 0; j < problem.criteria.size(); ++j)
    weights.add_row({problem.criteria[j].id, criterion_kind_name(problem.criteria[j].kind),
                     fmt_fixed(r.weights.values[j], 6)});
  out += weights.render();
  out += "\n";
  TextTable ranks({"alternative", "S", "K+", "K-", "U", "rank"});
  for (size_t i = 0; i < problem.alternatives.size(); ++i)
    ranks.add_row({problem.alternatives[i], fmt_fixed(r.edas.s[i], 6),
                   fmt_fixed(r.marcos.k_plus[i], 6), fmt_fixed(r.marcos.k_minus[i], 6),
                   fmt_fixed(r.marcos.u[i], 6), std::to_string(r.marcos.ranks[i])});
  out += ranks.render();
  return out;
}

inline std::string render_ranking_csv(const DecisionProblem& problem, const RankingResult& r) {
  std::string out = "alternative,pdas,ndas,s,k_plus,k_minus,u,rank\n";
  for (size_t i = 0; i < problem.alternatives.size(); ++i)
    out += csv_escape(problem.alternatives[i]) + "," + fmt_g9(r.edas.pdas[i]) + "," +
           fmt_g9(r.edas.ndas[i]) + "," + fmt_g9(r.edas.s[i]) + "," +
           fmt_g9(r.marcos.k_plus[i]) + "," + fmt_g9(r.marcos.k_minus[i]) + "," +
           fmt_g9(r.marcos.u[i]) + "," + std::to_string(r.marcos.ranks[i]) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Weights reports (per-measure entropies, weights, deviation from reference).
// ---------------------------------------------------------------------------

struct MeasureWeights {
  EntropyMeasure measure = EntropyMeasure::szmidt;
  std::vector<double> entropies;
  std::vector<double> weights;
  std::optional<double> max_abs_deviation;
};

struct WeightsReport {
  std::vector<std::string> criteria;
  std::vector<MeasureWeights> measures;
  std::optional<std::map<std::string, double>> reference;
};

inline WeightsReport weights_report(const DecisionProblem& problem,
                                    std::span<const EntropyMeasure> measures,
                                    const std::optional<std::map<std::string, double>>& reference) {
  WeightsReport rep;
  for (const auto& c : problem.criteria) rep.criteria.push_back(c.id);
  if (reference) {
    for (const auto& c : problem.criteria)
      require(reference->count(c.id), errc::weight_mismatch,
              "reference vector has no weight for criterion \"" + c.id + "\"");
    rep.reference = reference;
  }
  for (EntropyMeasure m : measures) {
    MeasureWeights mw;
    mw.measure = m;
    mw.entropies = column_entropies(problem, m);
    mw.weights = entropy_weights(problem, m).values;
    if (reference) {
      double dev = 0.0;
      for (size_t j = 0; j < rep.criteria.size(); ++j)
        dev = std::max(dev, std::fabs(mw.weights[j] - reference->at(rep.criteria[j])));
      mw.max_abs_deviation = dev;
    }
    rep.measures.push_back(std::move(mw));
  }
  return rep;
}

inline json weights_report_to_json(const WeightsReport& rep) {
  json j;
  j["criteria"] = rep.criteria;
  if (rep.reference) {
    json ref;
    for (const auto& [k, v] : *rep.reference) ref[k] = v;
    j["reference"] = std::move(ref);
  }
  json measures = json::array();
  for (const auto& mw : rep.measures) {
    json jm;
    jm["measure"] = entropy_measure_name(mw.measure);
    json ent, wts;
    for (size_t i = 0; i < rep.criteria.size(); ++i) {
      ent[rep.criteria[i]] = mw.entropies[i];
      wts[rep.criteria[i]] = mw.weights[i];
    }
    jm["entropies"] = std::move(ent);
    jm["weights"] = std::move(wts);
    if (mw.max_abs_deviation) jm["max_abs_deviation"] = *mw.max_abs_deviation;
    measures.push_back(std::move(jm));
  }
  j["measures"] = std::move(measures);
  return j;
}

inline std::string render_weights_table(const WeightsReport& rep) {
  std::string out;
  for (const auto& mw : rep.measures) {
    out += std::string("measure: ") + entropy_measure_name(mw.measure) + "\n";
    std::vector<std::string> header = {"criterion", "entropy", "weight"};
    if (rep.reference) {
      header.push_back("reference");
      header.push_back("deviation");
    }
    TextTable t(header);
    for (size_t i = 0; i < rep.criteria.size(); ++i) {
      std::vector<std::string> row = {rep.criteria[i], fmt_fixed(mw.entropies[i], 6),
                                      fmt_fixed(mw.weights[i], 6)};
      if (rep.reference) {
        double ref = rep.reference->at(rep.criteria[i]);
        row.push_back(fmt_fixed(ref, 6));
        row.push_back(fmt_fixed(mw.weights[i] - ref, 6));
      }
      t.add_row(std::move(row));
    }
    out += t.render();
    if (mw.max_abs_deviation)
      out += "max abs deviation from reference: " + fmt_fixed(*mw.max_abs_deviation, 6) + "\n";
    out += "\n";
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

inline std::string render_weights_csv(const WeightsReport& rep) {
  std::string out = "measure,criterion,entropy,weight";
  if (rep.reference) out += ",reference,deviation";
  out += "\n";
  for (const auto& mw : rep.measures) {
    for (size_t i = 0; i < rep.criteria.size(); ++i) {
      out += std::string(entropy_measure_name(mw.measure)) + "," + csv_escape(rep.criteria[i]) +
             "," + fmt_g9(mw.entropies[i]) + "," + fmt_g9(mw.weights[i]);
      if (rep.reference) {
        double ref = rep.reference->at(rep.criteria[i]);
        out += "," + fmt_g9(ref) + "," + fmt_g9(mw.weights[i] - ref);
      }
      out += "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation reports.
// ---------------------------------------------------------------------------

inline json evaluation_to_json(const EvaluationReport& rep) {
  json j;
  j["level"] = rep.level;
  json metrics = json::array();
  for (const auto& m : rep.metrics) {
    json jm;
    jm["metric"] = m.metric;
    jm["unit"] = m.unit;
    if (m.mae) jm["mae"] = *m.mae;
    if (m.mape) jm["mape"] = *m.mape;
    json records = json::array();
    for (const auto& r : m.records) {
      json jr;
      jr["period"] = r.period;
      jr["point"] = r.point;
      if (r.dist_mean) jr["mean"] = *r.dist_mean;
      if (r.dist_std) jr["std"] = *r.dist_std;
      if (r.interval) jr["interval"] = {{"hi", r.interval->hi}, {"lo", r.interval->lo}};
      if (r.var) jr["var"] = *r.var;
      if (r.actual) jr["actual"] = *r.actual;
      if (r.covered) jr["covered"] = *r.covered;
      records.push_back(std::move(jr));
    }
    jm["records"] = std::move(records);
    metrics.push_back(std::move(jm));
  }
  j["metrics"] = std::move(metrics);
  if (rep.coverage_fraction) j["coverage"] = *rep.coverage_fraction;
  if (rep.sharpe) j["sharpe"] = *rep.sharpe;
  if (rep.sortino) j["sortino"] = *rep.sortino;
  return j;
}

inline std::string render_evaluation_table(const EvaluationReport& rep) {
  std::string out;
  TextTable records(
      {"metric", "unit", "period", "point", "interval", "actual", "covered", "VaR"});
  bool any_record_field = false;
  for (const auto& m : rep.metrics) {
    for (const auto& r : m.records) {
      std::string interval;
      if (r.interval) {
        double half = 0.5 * (r.interval->hi - r.interval->lo);
        double center = 0.5 * (r.interval->hi + r.interval->lo);
        interval = fmt_g9(center) + " ± " + fmt_g9(half);
        any_record_field = true;
      }
      records.add_row({m.metric, m.unit, r.period, fmt_g9(r.point), interval,
                       r.actual ? fmt_g9(*r.actual) : "",
                       r.covered ? (*r.covered ? "yes" : "no") : "",
                       r.var ? fmt_g9(*r.var) : ""});
    }
  }
  out += records.render();
  bool any_errors = false;
  for (const auto& m : rep.metrics)
    if (m.mae) any_errors = true;
  if (any_errors) {
    out += "\n";
    TextTable errors({"metric", "unit", "MAE", "MAPE(%)"});
    for (const auto& m : rep.metrics)
      if (m.mae)
        errors.add_row({m.metric, m.unit, fmt_fixed(*m.mae, 2), fmt_fixed(*m.mape, 2)});
    out += errors.render();
  }
  std::string footer;
  if (rep.coverage_fraction)
    footer += "coverage at level " + fmt_fixed(rep.level, 2) + ": " +
              fmt_fixed(*rep.coverage_fraction, 6) + "\n";
  if (rep.sharpe) footer += "sharpe: " + fmt_fixed(*rep.sharpe, 6) + "\n";
  if (rep.sortino) footer += "sortino: " + fmt_fixed(*rep.sortino, 6) + "\n";
  if (!footer.empty()) out += "\n" + footer;
  (void)any_record_field;
  return out;
}

inline std::string render_evaluation_csv(const EvaluationReport& rep) {
  std::string out =
      "metric,period,unit,point,mean,std,lo,hi,var,actual,covered,mae,mape,coverage,sharpe,"
      "sortino\n";
  auto opt = [](const std::optional<double>& v) { return v ? fmt_g9(*v) : std::string(); };
  for (const auto& m : rep.metrics) {
    for (const auto& r : m.records) {
      out += csv_escape(m.metric) + "," + csv_escape(r.period) + "," + csv_escape(m.unit) + "," +
             fmt_g9(r.point) + "," + opt(r.dist_mean) + "," + opt(r.dist_std) + "," +
             (r.interval ? fmt_g9(r.interval->lo) : "") + "," +
             (r.interval ? fmt_g9(r.interval->hi) : "") + "," + opt(r.var) + "," +
             opt(r.actual) + "," + (r.covered ? (*r.covered ? "true" : "false") : "") + "," +
             opt(m.mae) + "," + opt(m.mape) + "," + opt(rep.coverage_fraction) + "," +
             opt(rep.sharpe) + "," + opt(rep.sortino) + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sensitivity sweep and summary reports.
// ---------------------------------------------------------------------------

inline json response_tables_to_json(std::span<const ResponseTable> tables) {
  json out = json::array();
  for (const auto& t : tables) {
    json jt;
    jt["driver"] = t.driver;
    if (!t.driver_unit.empty()) jt["driver_unit"] = t.driver_unit;
    jt["metrics"] = t.metrics;
    jt["units"] = t.metric_units;
    json rows = json::array();
    for (const auto& r : t.rows) {
      json jr;
      jr["driver_value"] = r.driver_value;
      json values = json::array(), interp = json::array();
      for (const auto& c : r.cells) {
        values.push_back(c.value);
        interp.push_back(c.interpolated);
      }
      jr["values"] = std::move(values);
      jr["interpolated"] = std::move(interp);
      rows.push_back(std::move(jr));
    }
    jt["rows"] = std::move(rows);
    out.push_back(std::move(jt));
  }
  return json{{"tables", std::move(out)}};
}

// Interpolated (non-knot) cells are marked with a trailing '*'.
inline std::string render_response_tables(std::span<const ResponseTable> tables) {
  std::string out;
  bool any_interp = false;
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    const auto& t = tables[ti];
    std::vector<std::string> header;
    header.push_back(t.driver + (t.driver_unit.empty() ? "" : " (" + t.driver_unit + ")"));
    for (size_t j = 0; j < t.metrics.size(); ++j)
      header.push_back(t.metrics[j] +
                       (t.metric_units[j].empty() ? "" : " (" + t.metric_units[j] + ")"));
    TextTable tt(header);
    for (const auto& r : t.rows) {
      std::vector<std::string> row = {fmt_g9(r.driver_value)};
      for (const auto& c : r.cells) {
        row.push_back(fmt_g9(c.value) + (c.interpolated ? "*" : ""));
        if (c.interpolated) any_interp = true;
      }
      tt.add_row(std::move(row));
    }
    out += tt.render();
    if (ti + 1 < tables.size()) out += "\n";
  }
  if (any_interp) out += "* interpolated between sweep knots\n";
  return out;
}

inline std::string render_response_tables_csv(std::span<const ResponseTable> tables) {
  std::string out = "driver,driver_value,metric,unit,value,interpolated\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      for (size_t j = 0; j < t.metrics.size(); ++j)
        out += csv_escape(t.driver) + "," + fmt_g9(r.driver_value) + "," +
               csv_escape(t.metrics[j]) + "," + csv_escape(t.metric_units[j]) + "," +
               fmt_g9(r.cells[j].value) + "," + (r.cells[j].interpolated ? "true" : "false") +
               "\n";
  return out;
}

inline json summary_to_json(const SensitivitySummary& s) {
  json j;
  j["selector"] = summary_selector_name(s.selector);
  j["metrics"] = s.metrics;
  j["units"] = s.metric_units;
  json base;
  for (size_t i = 0; i < s.metrics.size(); ++i) base[s.metrics[i]] = s.base[i];
  j["base"] = std::move(base);
  json cols = json::array();
  for (const auto& col : s.columns) {
    json jc;
    jc["driver"] = col.driver;
    json cells = json::array();
    for (size_t i = 0; i < col.cells.size(); ++i) {
      const auto& c = col.cells[i];
      cells.push_back({{"anchor", c.anchor},
                       {"driver_value", c.driver_value},
                       {"metric", s.metrics[i]},
                       {"pct_display", c.pct_display},
                       {"pct_raw", c.pct_raw},
                       {"value", c.value}});
    }
    jc["cells"] = std::move(cells);
    cols.push_back(std::move(jc));
  }
  j["columns"] = std::move(cols);
  return j;
}

inline std::string render_summary_table(const SensitivitySummary& s) {
  std::vector<std::string> header = {"metric", "base"};
  for (const auto& col : s.columns) header.push_back(col.driver);
  TextTable t(header);
  for (size_t i = 0; i < s.metrics.size(); ++i) {
    std::vector<std::string> row = {
        s.metrics[i] + (s.metric_units[i].empty() ? "" : " (" + s.metric_units[i] + ")"),
        fmt_g9(s.base[i])};
    for (const auto& col : s.columns) {
      const auto& c = col.cells[i];
      row.push_back(fmt_g9(c.value) + " (" + fmt_percent(c.pct_display) + ")");
    }
    t.add_row(std::move(row));
  }
  std::string out = t.render();
  out += "selector: " + std::string(summary_selector_name(s.selector)) + "\n";
  return out;
}

inline std::string render_summary_csv(const SensitivitySummary& s) {
  std::string out = "driver,metric,unit,driver_value,value,anchor,pct_raw,pct_display\n";
  for (const auto& col : s.columns)
    for (size_t i = 0; i < s.metrics.size(); ++i) {
      const auto& c = col.cells[i];
      out += csv_escape(col.driver) + "," + csv_escape(s.metrics[i]) + "," +
             csv_escape(s.metric_units[i]) + "," + fmt_g9(c.driver_value) + "," +
             fmt_g9(c.value) + "," + fmt_g9(c.anchor) + "," + fmt_g9(c.pct_raw) + "," +
             fmt_fixed(c.pct_display, 2) + "\n";
    }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario block.
// ---------------------------------------------------------------------------

inline std::string render_scenarios_table(std::span<const MetricScenario> scenarios) {
  TextTable t({"metric", "unit", "worst", "base", "best", "provenance"});
  for (const auto& s : scenarios)
    t.add_row({s.metric, s.unit, fmt_g9(s.triple.worst), fmt_g9(s.triple.base),
               fmt_g9(s.triple.best), s.provenance});
  return t.render();
}

inline std::string render_scenarios_csv(std::span<const MetricScenario> scenarios) {
  std::string out = "metric,unit,worst,base,best,provenance\n";
  for (const auto& s : scenarios)
    out += csv_escape(s.metric) + "," + csv_escape(s.unit) + "," + fmt_g9(s.triple.worst) + "," +
           fmt_g9(s.triple.base) + "," + fmt_g9(s.triple.best) + "," + s.provenance + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Feature table and graph rendering.
// ---------------------------------------------------------------------------

inline json feature_table_to_json(const FeatureTable& t) {
  json j;
  json cols = json::array();
  for (const auto& c : t.columns) cols.push_back(c.name);
  j["columns"] = std::move(cols);
  json rows = json::array();
  for (size_t i = 0; i < t.rows.size(); ++i) {
    json jr;
    jr["entity"] = t.row_ids[i].first;
    jr["period"] = t.row_ids[i].second;
    json values = json::array();
    for (const auto& v : t.rows[i]) {
      if (v)
        values.push_back(*v);
      else
        values.push_back(nullptr);
    }
    jr["values"] = std::move(values);
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline std::string render_feature_table(const FeatureTable& t) {
  std::vector<std::string> header = {"entity", "period"};
  for (const auto& c : t.columns) header.push_back(c.name);
  TextTable tt(header);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    std::vector<std::string> row = {t.row_ids[i].first, t.row_ids[i].second};
    for (const auto& v : t.rows[i]) row.push_back(v ? fmt_g9(*v) : "");
    tt.add_row(std::move(row));
  }
  return tt.render();
}

inline std::string render_graph_table(const FirmGraph& g) {
  TextTable t({"firm_a", "firm_b", "weight"});
  for (const auto& e : g.edges)
    t.add_row({g.nodes[e.a].firm, g.nodes[e.b].firm, fmt_fixed(e.weight, 6)});
  return t.render();
}

}  // namespace riskrank
