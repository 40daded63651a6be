#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riskrank/riskrank.hpp"

namespace {

using namespace riskrank;

struct GlobalOpts {
  std::string format = "table";
  std::string out;
  double level = 0.95;
  std::uint64_t seed = 42;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> split_numbers(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& tok : split_list(s)) {
    try {
      size_t pos = 0;
      double v = std::stod(tok, &pos);
      require(pos == tok.size(), errc::bad_argument, "");
      out.push_back(v);
    } catch (...) {
      raise(errc::bad_argument, flag + ": \"" + tok + "\" is not a number");
    }
  }
  require(!out.empty(), errc::bad_argument, flag + ": empty list");
  return out;
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_text_file(g.out, text);
}

ResponseModel resolve_model(const std::string& ref) {
  const std::string prefix = "fixtures:";
  if (ref.rfind(prefix, 0) == 0) {
    auto m = fixtures::builtin_response_model(ref.substr(prefix.size()));
    require(m.has_value(), errc::file_not_found,
            "no bundled fixture named \"" + ref.substr(prefix.size()) +
                "\" (available: paper-2024q2, table6, table7, table8, table9)");
    return *m;
  }
  return response_model_from_json(load_json_file(ref), ref);
}

std::string resolve_driver(const ResponseModel& model, const std::string& name) {
  auto drivers = model.drivers();
  for (const auto& d : drivers)
    if (d == name) return d;
  std::vector<std::string> hits;
  for (const auto& d : drivers)
    if (d.rfind(name, 0) == 0) hits.push_back(d);
  require(!hits.empty(), errc::bad_argument,
          "model has no driver \"" + name + "\"");
  require(hits.size() == 1, errc::bad_argument,
          "driver prefix \"" + name + "\" is ambiguous");
  return hits.front();
}

// ---------------------------------------------------------------------------

int cmd_rank(const GlobalOpts& g, const std::string& matrix_path,
             const std::string& weights_path, const std::string& variant,
             const std::string& measure) {
  DecisionProblem problem = load_decision_matrix(matrix_path);
  std::string weights_source = problem.weights ? "embedded" : "entropy";
  if (!weights_path.empty()) {
    problem.weights = weights_for_problem(load_weight_map(weights_path), problem);
    weights_source = "supplied";
  }
  RankOptions options;
  options.variant = parse_edas_variant(variant);
  options.measure = parse_entropy_measure(measure);
  RankingResult result = rank(problem, options);
  switch (parse_output_format(g.format)) {
    case OutputFormat::table: emit(g, render_ranking_table(problem, result)); break;
    case OutputFormat::csv: emit(g, render_ranking_csv(problem, result)); break;
    case OutputFormat::json:
      emit(g, canonical_dump(ranking_to_json(problem, result, weights_source, options)));
      break;
  }
  return 0;
}

int cmd_weights(const GlobalOpts& g, const std::string& matrix_path, const std::string& measure,
                const std::string& reference_path, const std::string& save_path) {
  DecisionProblem problem = load_decision_matrix(matrix_path);
  std::vector<EntropyMeasure> measures;
  if (measure == "all")
    measures = all_entropy_measures();
  else
    measures = {parse_entropy_measure(measure)};
  std::optional<std::map<std::string, double>> reference;
  if (!reference_path.empty()) reference = load_weight_map(reference_path);
  WeightsReport rep = weights_report(problem, measures, reference);
  if (!save_path.empty()) {
    require(measures.size() == 1, errc::bad_argument,
            "--save-weights needs a single --measure, not \"all\"");
    std::map<std::string, double> out;
    for (size_t i = 0; i < rep.criteria.size(); ++i)
      out[rep.criteria[i]] = rep.measures[0].weights[i];
    write_text_file(save_path, canonical_dump(weight_map_to_json(out)));
  }
  switch (parse_output_format(g.format)) {
    case OutputFormat::table: emit(g, render_weights_table(rep)); break;
    case OutputFormat::csv: emit(g, render_weights_csv(rep)); break;
    case OutputFormat::json: emit(g, canonical_dump(weights_report_to_json(rep))); break;
  }
  return 0;
}

int cmd_evaluate(const GlobalOpts& g, const std::string& forecasts_path,
                 const std::string& actuals_path, const std::string& samples_path, bool empirical,
                 const std::string& returns_path, double risk_free, double target,
                 bool allow_point_override, int simulate_coverage) {
  std::vector<ForecastRecord> forecasts;
  if (!forecasts_path.empty()) forecasts = load_forecasts(forecasts_path);
  if (!samples_path.empty()) {
    for (const auto& set : load_mc_samples(samples_path)) {
      ForecastRecord rec;
      rec.metric = set.metric;
      rec.period = set.period;
      if (empirical) {
        rec.distribution = PredictiveDistribution::empirical(set.values);
        rec.point = rec.distribution->center();
      } else {
        rec.distribution = aggregate_mc_samples(set.values);
        rec.point = rec.distribution->mu;
      }
      forecasts.push_back(std::move(rec));
    }
  }
  require(!forecasts.empty(), errc::bad_argument,
          "nothing to evaluate: pass --forecasts and/or --samples");

  std::vector<ActualRecord> actuals;
  if (!actuals_path.empty()) {
    actuals = load_actuals(actuals_path);
    // Sample-derived records carry no unit; adopt the paired actual's unit.
    for (auto& f : forecasts) {
      if (!f.unit.empty()) continue;
      for (const auto& a : actuals)
        if (a.metric == f.metric && a.period == f.period) f.unit = a.unit;
    }
  }

  EvaluateOptions options;
  options.level = g.level;
  options.allow_point_override = allow_point_override;
  options.risk_free = risk_free;
  options.target = target;
  if (!returns_path.empty()) options.portfolio_returns = load_return_column(returns_path);
  EvaluationReport rep = evaluate(forecasts, actuals, options);

  // Synthetic calibration check: draw actuals from each parametric forecast's
  // own distribution and measure how often they land inside the interval.
  std::optional<double> simulated;
  if (simulate_coverage > 0) {
    std::vector<std::pair<ForecastRecord, ActualRecord>> pairs;
    std::uint64_t stream = 0;
    for (const auto& f : forecasts) {
      require(f.distribution.has_value(), errc::missing_distribution,
              "coverage simulation needs a distribution for " + f.metric + "/" + f.period);
      double mu = f.distribution->center();
      double sigma = f.distribution->parametric() ? f.distribution->sigma
                                                  : sample_stddev(f.distribution->samples);
      auto draws = gaussian_samples(g.seed + stream++, static_cast<size_t>(simulate_coverage),
                                    mu, sigma);
      for (double d : draws)
        pairs.emplace_back(f, ActualRecord{f.metric, f.period, f.unit, d});
    }
    simulated = interval_coverage(pairs, g.level);
  }

  switch (parse_output_format(g.format)) {
    case OutputFormat::table: {
      std::string text = render_evaluation_table(rep);
      if (simulated)
        text += "simulated coverage (" + std::to_string(simulate_coverage) +
                " draws/record, seed " + std::to_string(g.seed) + "): " +
                fmt_fixed(*simulated, 6) + "\n";
      emit(g, text);
      break;
    }
    case OutputFormat::csv: emit(g, render_evaluation_csv(rep)); break;
    case OutputFormat::json: {
      json j = evaluation_to_json(rep);
      if (simulated) {
        j["simulated_coverage"] = *simulated;
        j["simulated_draws"] = simulate_coverage;
        j["seed"] = g.seed;
      }
      emit(g, canonical_dump(j));
      break;
    }
  }
  return 0;
}

int cmd_sensitivity(const GlobalOpts& g, const std::string& model_ref, const std::string& driver,
                    const std::string& values, const std::string& metrics, bool allow_extrapolate,
                    bool summary, const std::string& selector) {
  ResponseModel model = resolve_model(model_ref);
  std::vector<std::string> drivers;
  if (driver.empty())
    drivers = model.drivers();
  else
    drivers = {resolve_driver(model, driver)};
  require(values.empty() || drivers.size() == 1, errc::bad_argument,
          "--values needs a single --driver");

  std::vector<ResponseTable> tables;
  for (const auto& d : drivers) {
    DriverSweep sweep;
    if (values.empty()) {
      sweep = model.knot_sweep(d);
    } else {
      sweep.driver = d;
      sweep.values = split_numbers(values, "--values");
      for (const auto& e : model.entries)
        if (e.driver == d && sweep.unit.empty()) sweep.unit = e.driver_unit;
    }
    std::vector<std::string> ms =
        metrics.empty() ? model.metrics_for(d) : split_list(metrics);
    tables.push_back(run_sweep(model, sweep, ms, allow_extrapolate));
  }

  if (summary) {
    auto anchors = model.all_anchor_values();
    SensitivitySummary s =
        summarize(tables, model.base, parse_summary_selector(selector),
                  model.row_picks.empty() ? nullptr : &model.row_picks, &anchors);
    switch (parse_output_format(g.format)) {
      case OutputFormat::table: emit(g, render_summary_table(s)); break;
      case OutputFormat::csv: emit(g, render_summary_csv(s)); break;
      case OutputFormat::json: emit(g, canonical_dump(summary_to_json(s))); break;
    }
    return 0;
  }
  switch (parse_output_format(g.format)) {
    case OutputFormat::table: emit(g, render_response_tables(tables)); break;
    case OutputFormat::csv: emit(g, render_response_tables_csv(tables)); break;
    case OutputFormat::json: emit(g, canonical_dump(response_tables_to_json(tables))); break;
  }
  return 0;
}

int cmd_scenario(const GlobalOpts& g, const std::string& triples_path,
                 const std::string& forecasts_path) {
  require(triples_path.empty() != forecasts_path.empty(), errc::bad_argument,
          "pass exactly one of --triples (supplied) or --forecasts (derived)");
  std::vector<MetricScenario> scenarios;
  if (!triples_path.empty()) {
    scenarios = load_scenarios(triples_path);
  } else {
    auto forecasts = load_forecasts(forecasts_path);
    require(!forecasts.empty(), errc::empty_input, forecasts_path + ": no records");
    std::map<std::string, int> metric_count;
    for (const auto& f : forecasts) ++metric_count[f.metric];
    for (const auto& f : forecasts) {
      require(f.distribution.has_value(), errc::missing_distribution,
              "record " + f.metric + "/" + f.period + " has no distribution to derive from");
      MetricScenario s;
      s.metric = metric_count[f.metric] > 1 ? f.metric + "/" + f.period : f.metric;
      s.unit = f.unit;
      s.triple = quantile_scenarios(*f.distribution);
      s.provenance = "derived";
      scenarios.push_back(std::move(s));
    }
    validate_scenarios(scenarios);
  }
  switch (parse_output_format(g.format)) {
    case OutputFormat::table: emit(g, render_scenarios_table(scenarios)); break;
    case OutputFormat::csv: emit(g, render_scenarios_csv(scenarios)); break;
    case OutputFormat::json: emit(g, canonical_dump(scenarios_to_json(scenarios))); break;
  }
  return 0;
}

void emit_feature_table(const GlobalOpts& g, const FeatureTable& t) {
  switch (parse_output_format(g.format)) {
    case OutputFormat::table: emit(g, render_feature_table(t)); break;
    case OutputFormat::csv: emit(g, feature_table_to_csv(t)); break;
    case OutputFormat::json: emit(g, canonical_dump(feature_table_to_json(t))); break;
  }
}

std::vector<size_t> select_columns(const FeatureTable& t, const std::string& columns) {
  std::vector<size_t> idx;
  if (columns.empty()) {
    for (size_t j = 0; j < t.columns.size(); ++j) idx.push_back(j);
    return idx;
  }
  for (const auto& name : split_list(columns)) {
    bool found = false;
    for (size_t j = 0; j < t.columns.size(); ++j)
      if (t.columns[j].name == name) {
        idx.push_back(j);
        found = true;
      }
    require(found, errc::bad_argument, "no column named \"" + name + "\"");
  }
  return idx;
}

int cmd_preprocess_impute(const GlobalOpts& g, const std::string& in_path, int k) {
  emit_feature_table(g, knn_impute(load_feature_table(in_path), k));
  return 0;
}

int cmd_preprocess_zscore(const GlobalOpts& g, const std::string& in_path,
                          const std::string& columns) {
  FeatureTable t = load_feature_table(in_path);
  for (size_t j : select_columns(t, columns)) {
    std::vector<std::optional<double>> col;
    for (const auto& row : t.rows) col.push_back(row[j]);
    ZscoreColumn z = zscore_normalize(col);
    if (z.constant)
      std::cerr << "warning: column \"" << t.columns[j].name
                << "\" is constant; z-scores set to 0\n";
    for (size_t i = 0; i < t.rows.size(); ++i) t.rows[i][j] = z.values[i];
  }
  emit_feature_table(g, t);
  return 0;
}

int cmd_preprocess_minmax(const GlobalOpts& g, const std::string& in_path, double lo, double hi,
                          const std::string& columns) {
  FeatureTable t = load_feature_table(in_path);
  for (size_t j : select_columns(t, columns)) {
    std::vector<std::optional<double>> col;
    for (const auto& row : t.rows) col.push_back(row[j]);
    auto scaled = minmax_scale(col, lo, hi);
    for (size_t i = 0; i < t.rows.size(); ++i) t.rows[i][j] = scaled[i];
  }
  emit_feature_table(g, t);
  return 0;
}

int cmd_graph(const GlobalOpts& g, const std::string& returns_path,
              const std::string& sectors_path, int window, double beta) {
  auto series = load_return_series(returns_path);
  std::map<std::string, std::string> sectors;
  if (!sectors_path.empty()) sectors = load_sectors(sectors_path);
  FirmGraph graph = build_correlation_graph(series, window, sectors, beta);
  switch (parse_output_format(g.format)) {
    case OutputFormat::table: emit(g, render_graph_table(graph)); break;
    case OutputFormat::csv: emit(g, graph_to_csv(graph)); break;
    case OutputFormat::json: emit(g, canonical_dump(graph_to_json(graph))); break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forecast evaluation and model ranking toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "Output format: table, csv, or json")
      ->default_str("table");
  app.add_option("--out", g.out, "Write the report to a file instead of stdout");
  app.add_option("--level", g.level, "Confidence level in (0,1)")->default_str("0.95");
  app.add_option("--seed", g.seed, "Seed for simulated draws")->default_str("42");

  auto* rank_cmd = app.add_subcommand("rank", "Rank alternatives from a decision matrix");
  std::string rank_matrix, rank_weights, rank_variant = "membership", rank_measure = "szmidt";
  rank_cmd->add_option("--matrix", rank_matrix, "Decision matrix JSON")->required();
  rank_cmd->add_option("--weights", rank_weights, "Criterion weights JSON (default: entropy)");
  rank_cmd->add_option("--variant", rank_variant, "Appraisal variant: membership, score, distance");
  rank_cmd->add_option("--measure", rank_measure, "Entropy measure: szmidt, burillo, vlachos");

  auto* weights_cmd = app.add_subcommand("weights", "Entropy criterion weights from a matrix");
  std::string w_matrix, w_measure = "szmidt", w_reference, w_save;
  weights_cmd->add_option("--matrix", w_matrix, "Decision matrix JSON")->required();
  weights_cmd->add_option("--measure", w_measure, "szmidt, burillo, vlachos, or all");
  weights_cmd->add_option("--reference", w_reference, "Reference weight vector JSON");
  weights_cmd->add_option("--save-weights", w_save, "Also write the weights to this JSON file");

  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate forecasts against actuals");
  std::string e_forecasts, e_actuals, e_samples, e_returns;
  bool e_empirical = false, e_override = false;
  double e_rf = 0.0, e_target = 0.0;
  int e_simulate = 0;
  eval_cmd->add_option("--forecasts", e_forecasts, "Forecast CSV");
  eval_cmd->add_option("--actuals", e_actuals, "Actuals CSV");
  eval_cmd->add_option("--samples", e_samples, "Monte-Carlo samples CSV");
  eval_cmd->add_flag("--empirical", e_empirical,
                     "Keep sample distributions empirical instead of Gaussian aggregation");
  eval_cmd->add_option("--returns", e_returns, "Portfolio returns CSV for Sharpe/Sortino");
  eval_cmd->add_option("--rf", e_rf, "Risk-free rate for Sharpe/Sortino");
  eval_cmd->add_option("--target", e_target, "Downside target for Sortino");
  eval_cmd->add_flag("--allow-point-override", e_override,
                     "Accept point forecasts that disagree with the distribution mean");
  eval_cmd->add_option("--simulate-coverage", e_simulate,
                       "Draw N seeded actuals per record and report empirical coverage");

  auto* sens_cmd = app.add_subcommand("sensitivity", "Driver sweeps over a response model");
  std::string s_model, s_driver, s_values, s_metrics, s_selector = "max-delta";
  bool s_extrapolate = false, s_summary = false;
  sens_cmd->add_option("--model", s_model, "Response model JSON or fixtures:<name>")->required();
  sens_cmd->add_option("--driver", s_driver, "Driver to sweep (default: all; prefix ok)");
  sens_cmd->add_option("--values", s_values, "Comma-separated sweep values (default: knots)");
  sens_cmd->add_option("--metrics", s_metrics, "Comma-separated metrics (default: all)");
  sens_cmd->add_flag("--allow-extrapolate", s_extrapolate,
                     "Extrapolate beyond the lookup domain instead of failing");
  sens_cmd->add_flag("--summary", s_summary, "Emit the one-line-per-metric summary");
  sens_cmd->add_option("--selector", s_selector, "Summary row selector: max-delta or verbatim");

  auto* scen_cmd = app.add_subcommand("scenario", "Worst/base/best scenario block");
  std::string sc_triples, sc_forecasts;
  scen_cmd->add_option("--triples", sc_triples, "Supplied scenario triples JSON");
  scen_cmd->add_option("--forecasts", sc_forecasts,
                       "Forecast CSV with distributions to derive scenarios from");

  auto* pre_cmd = app.add_subcommand("preprocess", "Panel preprocessing");
  pre_cmd->require_subcommand(1);
  auto* imp_cmd = pre_cmd->add_subcommand("impute", "KNN-impute missing cells");
  std::string p_in_impute;
  int p_k = 5;
  imp_cmd->add_option("--in", p_in_impute, "Feature table CSV")->required();
  imp_cmd->add_option("--k", p_k, "Neighbor count")->default_str("5");
  auto* z_cmd = pre_cmd->add_subcommand("zscore", "Z-score columns (population std)");
  std::string p_in_z, p_cols_z;
  z_cmd->add_option("--in", p_in_z, "Feature table CSV")->required();
  z_cmd->add_option("--columns", p_cols_z, "Comma-separated columns (default: all)");
  auto* mm_cmd = pre_cmd->add_subcommand("minmax", "Min-max scale columns");
  std::string p_in_mm, p_cols_mm;
  double p_lo = 0.0, p_hi = 1.0;
  mm_cmd->add_option("--in", p_in_mm, "Feature table CSV")->required();
  mm_cmd->add_option("--lo", p_lo, "Target minimum")->default_str("0");
  mm_cmd->add_option("--hi", p_hi, "Target maximum")->default_str("1");
  mm_cmd->add_option("--columns", p_cols_mm, "Comma-separated columns (default: all)");

  auto* graph_cmd = app.add_subcommand("graph", "Correlation firm graph from returns");
  std::string gr_returns, gr_sectors;
  int gr_window = 4;
  double gr_beta = 0.5;
  graph_cmd->add_option("--returns", gr_returns, "Wide returns CSV (period,<firm...>)")
      ->required();
  graph_cmd->add_option("--sectors", gr_sectors, "Sector map CSV (firm,sector)");
  graph_cmd->add_option("--window", gr_window, "Correlation window in periods")
      ->default_str("4");
  graph_cmd->add_option("--beta", gr_beta, "Same-sector multiplicative boost")
      ->default_str("0.5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rank_cmd->parsed())
      return cmd_rank(g, rank_matrix, rank_weights, rank_variant, rank_measure);
    if (weights_cmd->parsed()) return cmd_weights(g, w_matrix, w_measure, w_reference, w_save);
    if (eval_cmd->parsed())
      return cmd_evaluate(g, e_forecasts, e_actuals, e_samples, e_empirical, e_returns, e_rf,
                          e_target, e_override, e_simulate);
    if (sens_cmd->parsed())
      return cmd_sensitivity(g, s_model, s_driver, s_values, s_metrics, s_extrapolate, s_summary,
                             s_selector);
    if (scen_cmd->parsed()) return cmd_scenario(g, sc_triples, sc_forecasts);
    if (pre_cmd->parsed()) {
      if (imp_cmd->parsed()) return cmd_preprocess_impute(g, p_in_impute, p_k);
      if (z_cmd->parsed()) return cmd_preprocess_zscore(g, p_in_z, p_cols_z);
      if (mm_cmd->parsed()) return cmd_preprocess_minmax(g, p_in_mm, p_lo, p_hi, p_cols_mm);
    }
    if (graph_cmd->parsed()) return cmd_graph(g, gr_returns, gr_sectors, gr_window, gr_beta);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.input() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
