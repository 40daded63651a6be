#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "riskrank/decision.hpp"
#include "riskrank/errors.hpp"
#include "riskrank/forecast.hpp"
#include "riskrank/graph.hpp"
#include "riskrank/preprocess.hpp"
#include "riskrank/scenario.hpp"

namespace riskrank {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Canonical text forms. Every format the tool writes is byte-stable: object
// keys sorted, two-space indent, floats printed with 9 significant digits.
// ---------------------------------------------------------------------------

inline std::string fmt_g9(double x) {
  require(std::isfinite(x), errc::schema_error, "cannot serialize a non-finite number");
  if (x == 0.0) x = 0.0;  // collapse -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

namespace detail {

inline void dump_canonical(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + json(it.key()).dump() + ": ";
        dump_canonical(it.value(), out, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_canonical(j[i], out, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += fmt_g9(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

// Canonical JSON: sorted keys (nlohmann objects iterate sorted), two-space
// indent, %.9g floats, trailing newline.
inline std::string canonical_dump(const json& j) {
  std::string out;
  detail::dump_canonical(j, out, 0);
  out += "\n";
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::file_not_found, "cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::file_not_found, "cannot write \"" + path + "\"");
  out << content;
  require(out.good(), errc::file_not_found, "write to \"" + path + "\" failed");
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(errc::parse_error, origin + ": " + e.what());
  }
}

inline json load_json_file(const std::string& path) {
  return parse_json(read_text_file(path), path);
}

// ---------------------------------------------------------------------------
// Small schema helpers over nlohmann values.
// ---------------------------------------------------------------------------

namespace detail {

inline const json& member(const json& j, const std::string& key, const std::string& where) {
  require(j.is_object(), errc::schema_error, where + " must be an object");
  auto it = j.find(key);
  require(it != j.end(), errc::schema_error, where + " is missing \"" + key + "\"");
  return *it;
}

inline std::string get_string(const json& j, const std::string& key, const std::string& where) {
  const json& v = member(j, key, where);
  require(v.is_string(), errc::schema_error, where + "." + key + " must be a string");
  return v.get<std::string>();
}

inline double get_number(const json& j, const std::string& key, const std::string& where) {
  const json& v = member(j, key, where);
  require(v.is_number(), errc::schema_error, where + "." + key + " must be a number");
  return v.get<double>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV plumbing. Fields containing commas, quotes, or newlines are quoted on
// output; quoted fields are handled on input. One record per line.
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_csv_line(const std::string& line, size_t line_no,
                                               const std::string& origin) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  require(!quoted, errc::parse_error,
          origin + ":" + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(cur);
  return fields;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::pair<size_t, std::vector<std::string>>> rows;  // (line number, fields)
};

inline CsvFile read_csv(const std::string& path) {
  std::string text = read_text_file(path);
  CsvFile out;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_no, path);
    if (line_no == 1)
      out.header = std::move(fields);
    else
      out.rows.emplace_back(line_no, std::move(fields));
  }
  require(!out.header.empty(), errc::parse_error, path + ": missing header line");
  return out;
}

inline double parse_number(const std::string& field, const std::string& origin, size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  require(end == begin + field.size() && !field.empty() && std::isfinite(v), errc::parse_error,
          origin + ":" + std::to_string(line_no) + ": \"" + field + "\" is not a finite number");
  return v;
}

inline void expect_columns(const CsvFile& csv, const std::vector<std::string>& wanted,
                           const std::string& origin, bool allow_extra = false) {
  require(csv.header.size() >= wanted.size(), errc::schema_error,
          origin + ": header has too few columns");
  for (size_t i = 0; i < wanted.size(); ++i)
    require(csv.header[i] == wanted[i], errc::schema_error,
            origin + ": column " + std::to_string(i + 1) + " must be \"" + wanted[i] +
                "\", got \"" + csv.header[i] + "\"");
  if (!allow_extra)
    require(csv.header.size() == wanted.size(), errc::schema_error,
            origin + ": unexpected extra columns");
}

// ---------------------------------------------------------------------------
// Decision matrices:
//   {alternatives: [...], criteria: [{id, name, kind}...],
//    cells: [[[{mu, nu}...]...]...], weights?: {id: w}}
// cells[i][j] is the hesitant list for alternative i, criterion j.
// ---------------------------------------------------------------------------

inline DecisionProblem decision_problem_from_json(const json& j, const std::string& origin) {
  DecisionProblem p;
  const json& alts = detail::member(j, "alternatives", origin);
  require(alts.is_array(), errc::schema_error, origin + ".alternatives must be an array");
  for (const auto& a : alts) {
    require(a.is_string(), errc::schema_error, origin + ".alternatives must hold strings");
    p.alternatives.push_back(a.get<std::string>());
  }
  const json& crits = detail::member(j, "criteria", origin);
  require(crits.is_array(), errc::schema_error, origin + ".criteria must be an array");
  for (const auto& c : crits) {
    CriterionSpec spec;
    spec.id = detail::get_string(c, "id", origin + ".criteria[]");
    spec.kind = parse_criterion_kind(detail::get_string(c, "kind", origin + ".criteria[]"));
    if (c.contains("name")) spec.name = detail::get_string(c, "name", origin + ".criteria[]");
    p.criteria.push_back(std::move(spec));
  }
  const json& cells = detail::member(j, "cells", origin);
  require(cells.is_array(), errc::schema_error, origin + ".cells must be an array");
  for (size_t i = 0; i < cells.size(); ++i) {
    const json& row = cells[i];
    require(row.is_array(), errc::schema_error, origin + ".cells rows must be arrays");
    std::vector<HesitantIfn> prow;
    for (size_t jx = 0; jx < row.size(); ++jx) {
      const json& cell = row[jx];
      require(cell.is_array() && !cell.empty(), errc::schema_error,
              origin + ".cells[" + std::to_string(i) + "][" + std::to_string(jx) +
                  "] must be a non-empty array of {mu, nu}");
      HesitantIfn h;
      for (const auto& e : cell) {
        double mu = detail::get_number(e, "mu", origin + " cell");
        double nu = detail::get_number(e, "nu", origin + " cell");
        try {
          h.elements.push_back(make_ifn(mu, nu));
        } catch (const Error& err) {
          std::string alt = i < p.alternatives.size() ? p.alternatives[i] : std::to_string(i);
          std::string cid = jx < p.criteria.size() ? p.criteria[jx].id : std::to_string(jx);
          raise(errc::invalid_ifn, origin + ": row \"" + alt + "\", column \"" + cid +
                                       "\": " + err.what());
        }
      }
      prow.push_back(std::move(h));
    }
    p.cells.push_back(std::move(prow));
  }
  if (j.contains("weights")) {
    const json& w = j["weights"];
    require(w.is_object(), errc::schema_error, origin + ".weights must be an object");
    std::vector<double> raw;
    for (const auto& c : p.criteria) {
      require(w.contains(c.id), errc::weight_mismatch,
              origin + ".weights has no entry for criterion \"" + c.id + "\"");
      raw.push_back(detail::get_number(w, c.id, origin + ".weights"));
    }
    require(w.size() == p.criteria.size(), errc::weight_mismatch,
            origin + ".weights has entries for unknown criteria");
    p.weights = normalized_weights(std::move(raw));
  }
  p.validate();
  return p;
}

inline DecisionProblem load_decision_matrix(const std::string& path) {
  return decision_problem_from_json(load_json_file(path), path);
}

inline json decision_problem_to_json(const DecisionProblem& p) {
  json j;
  j["alternatives"] = p.alternatives;
  json crits = json::array();
  for (const auto& c : p.criteria) {
    json jc;
    jc["id"] = c.id;
    jc["kind"] = criterion_kind_name(c.kind);
    if (!c.name.empty()) jc["name"] = c.name;
    crits.push_back(std::move(jc));
  }
  j["criteria"] = std::move(crits);
  json cells = json::array();
  for (const auto& row : p.cells) {
    json jrow = json::array();
    for (const auto& cell : row) {
      json jcell = json::array();
      for (const auto& e : cell.elements) jcell.push_back({{"mu", e.mu}, {"nu", e.nu}});
      jrow.push_back(std::move(jcell));
    }
    cells.push_back(std::move(jrow));
  }
  j["cells"] = std::move(cells);
  if (p.weights) {
    json w;
    for (size_t i = 0; i < p.criteria.size(); ++i) w[p.criteria[i].id] = p.weights->values[i];
    j["weights"] = std::move(w);
  }
  return j;
}

// Flat {criterion id: weight} maps, e.g. reference weight vectors.
inline std::map<std::string, double> load_weight_map(const std::string& path) {
  json j = load_json_file(path);
  require(j.is_object() && !j.empty(), errc::schema_error,
          path + ": expected a non-empty object of {criterion id: weight}");
  std::map<std::string, double> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    require(it.value().is_number(), errc::schema_error,
            path + ": weight for \"" + it.key() + "\" must be a number");
    double v = it.value().get<double>();
    require(std::isfinite(v) && v >= 0.0, errc::bad_weights,
            path + ": weight for \"" + it.key() + "\" must be non-negative");
    out[it.key()] = v;
  }
  return out;
}

inline json weight_map_to_json(const std::map<std::string, double>& weights) {
  json j = json::object();
  for (const auto& [k, v] : weights) j[k] = v;
  return j;
}

// Align a weight map with a problem's criteria (exact key set) and normalize.
inline WeightVector weights_for_problem(const std::map<std::string, double>& map,
                                        const DecisionProblem& problem) {
  std::vector<double> raw;
  for (const auto& c : problem.criteria) {
    auto it = map.find(c.id);
    require(it != map.end(), errc::weight_mismatch,
            "no weight supplied for criterion \"" + c.id + "\"");
    raw.push_back(it->second);
  }
  require(map.size() == problem.criteria.size(), errc::weight_mismatch,
          "weight map has entries for unknown criteria");
  return normalized_weights(std::move(raw));
}

// ---------------------------------------------------------------------------
// Forecast / actual CSV:
//   metric,period,unit,point[,mean,std[,feature...]]
//   metric,period,unit,value
// Empty mean/std cells mean "no distribution"; extra columns are numeric
// features attached to the record (empty cell = feature absent).
// ---------------------------------------------------------------------------

inline std::vector<ForecastRecord> load_forecasts(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"metric", "period", "unit", "point"}, path, true);
  bool has_mean = csv.header.size() > 4;
  if (has_mean)
    require(csv.header[4] == "mean", errc::schema_error,
            path + ": column 5 must be \"mean\" when present");
  bool has_std = csv.header.size() > 5;
  if (has_std)
    require(csv.header[5] == "std", errc::schema_error,
            path + ": column 6 must be \"std\" when present");
  std::vector<std::string> features(csv.header.begin() + (has_std ? 6 : (has_mean ? 5 : 4)),
                                    csv.header.end());
  std::vector<ForecastRecord> out;
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == csv.header.size(), errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    ForecastRecord rec;
    rec.metric = fields[0];
    rec.period = fields[1];
    rec.unit = fields[2];
    rec.point = parse_number(fields[3], path, line_no);
    std::string mean_field = has_mean ? fields[4] : "";
    std::string std_field = has_std ? fields[5] : "";
    require(mean_field.empty() == std_field.empty(), errc::schema_error,
            path + ":" + std::to_string(line_no) + ": mean and std must be given together");
    if (!mean_field.empty())
      rec.distribution = PredictiveDistribution::gaussian(parse_number(mean_field, path, line_no),
                                                          parse_number(std_field, path, line_no));
    for (size_t f = 0; f < features.size(); ++f) {
      const std::string& cell = fields[(has_std ? 6 : (has_mean ? 5 : 4)) + f];
      if (!cell.empty()) rec.features[features[f]] = parse_number(cell, path, line_no);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<ActualRecord> load_actuals(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"metric", "period", "unit", "value"}, path);
  std::vector<ActualRecord> out;
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == 4, errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    out.push_back({fields[0], fields[1], fields[2], parse_number(fields[3], path, line_no)});
  }
  return out;
}

// Monte-Carlo draw files: metric,period,sample_index,value. Indices must be
// unique per (metric, period); draws are returned in index order.
struct McSampleSet {
  std::string metric;
  std::string period;
  std::vector<double> values;
};

inline std::vector<McSampleSet> load_mc_samples(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"metric", "period", "sample_index", "value"}, path);
  std::vector<McSampleSet> out;
  std::map<std::pair<std::string, std::string>, size_t> index;
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<long, double>>> draws;
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == 4, errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    auto key = std::make_pair(fields[0], fields[1]);
    if (!index.count(key)) {
      index[key] = out.size();
      out.push_back({fields[0], fields[1], {}});
    }
    double idx_raw = parse_number(fields[2], path, line_no);
    long idx = static_cast<long>(idx_raw);
    require(static_cast<double>(idx) == idx_raw && idx >= 0, errc::parse_error,
            path + ":" + std::to_string(line_no) + ": sample_index must be a non-negative integer");
    draws[key].emplace_back(idx, parse_number(fields[3], path, line_no));
  }
  for (auto& [key, list] : draws) {
    std::sort(list.begin(), list.end());
    for (size_t i = 1; i < list.size(); ++i)
      require(list[i].first != list[i - 1].first, errc::schema_error,
              path + ": duplicate sample_index " + std::to_string(list[i].first) + " for " +
                  key.first + "/" + key.second);
    auto& set = out[index[key]];
    set.values.reserve(list.size());
    for (const auto& [idx, v] : list) set.values.push_back(v);
  }
  return out;
}

// Portfolio return series: period,return (chronological rows).
inline std::vector<double> load_return_column(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"period", "return"}, path);
  std::vector<double> out;
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == 2, errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    out.push_back(parse_number(fields[1], path, line_no));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Response models. Accepted shapes: a single entry object
// {driver, metric, kind, ...}, an array of such entries, or the full form
// {name?, base?, metrics?, row_picks?, entries: [...]}.
// ---------------------------------------------------------------------------

inline ResponseEntry response_entry_from_json(const json& j, const std::string& origin) {
  ResponseEntry e;
  e.driver = detail::get_string(j, "driver", origin);
  e.metric = detail::get_string(j, "metric", origin);
  if (j.contains("driver_unit")) e.driver_unit = detail::get_string(j, "driver_unit", origin);
  if (j.contains("unit")) e.metric_unit = detail::get_string(j, "unit", origin);
  std::string kind = detail::get_string(j, "kind", origin);
  if (kind == "lookup") {
    e.kind = ResponseEntry::Kind::lookup;
    const json& knots = detail::member(j, "knots", origin);
    require(knots.is_array(), errc::schema_error, origin + ".knots must be an array");
    for (const auto& k : knots) {
      require(k.is_array() && k.size() == 2 && k[0].is_number() && k[1].is_number(),
              errc::schema_error, origin + ".knots entries must be [driver, value] pairs");
      e.knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
  } else if (kind == "linear") {
    e.kind = ResponseEntry::Kind::linear;
    e.base = detail::get_number(j, "base", origin);
    e.slope = detail::get_number(j, "slope", origin);
    if (j.contains("ref")) e.ref = detail::get_number(j, "ref", origin);
  } else {
    raise(errc::schema_error, origin + ".kind must be \"lookup\" or \"linear\"");
  }
  e.validate();
  return e;
}

inline ResponseModel response_model_from_json(const json& j, const std::string& origin) {
  ResponseModel m;
  const json* entries = nullptr;
  if (j.is_array()) {
    entries = &j;
  } else if (j.is_object() && j.contains("entries")) {
    entries = &j["entries"];
    require(entries->is_array(), errc::schema_error, origin + ".entries must be an array");
    if (j.contains("name")) m.name = detail::get_string(j, "name", origin);
    if (j.contains("base")) {
      const json& b = j["base"];
      require(b.is_object(), errc::schema_error, origin + ".base must be an object");
      for (auto it = b.begin(); it != b.end(); ++it) {
        require(it.value().is_number(), errc::schema_error,
                origin + ".base values must be numbers");
        m.base[it.key()] = it.value().get<double>();
      }
    }
    if (j.contains("metrics")) {
      const json& ms = j["metrics"];
      require(ms.is_array(), errc::schema_error, origin + ".metrics must be an array");
      for (const auto& v : ms) {
        require(v.is_string(), errc::schema_error, origin + ".metrics must hold strings");
        m.metric_order.push_back(v.get<std::string>());
      }
    }
    if (j.contains("anchors")) {
      const json& a = j["anchors"];
      require(a.is_object(), errc::schema_error, origin + ".anchors must be an object");
      for (auto it = a.begin(); it != a.end(); ++it) {
        require(it.value().is_number(), errc::schema_error,
                origin + ".anchors values must be numbers");
        m.driver_anchor[it.key()] = it.value().get<double>();
      }
    }
    if (j.contains("row_picks")) {
      const json& rp = j["row_picks"];
      require(rp.is_object(), errc::schema_error, origin + ".row_picks must be an object");
      for (auto dit = rp.begin(); dit != rp.end(); ++dit) {
        require(dit.value().is_object(), errc::schema_error,
                origin + ".row_picks values must be objects");
        for (auto mit = dit.value().begin(); mit != dit.value().end(); ++mit) {
          require(mit.value().is_number(), errc::schema_error,
                  origin + ".row_picks leaves must be numbers");
          m.row_picks[dit.key()][mit.key()] = mit.value().get<double>();
        }
      }
    }
  } else if (j.is_object()) {
    ResponseEntry e = response_entry_from_json(j, origin);
    m.metric_order.push_back(e.metric);
    m.entries.push_back(std::move(e));
    m.validate();
    return m;
  } else {
    raise(errc::schema_error, origin + ": expected a response model object or entry array");
  }
  for (const auto& je : *entries) m.entries.push_back(response_entry_from_json(je, origin));
  if (m.metric_order.empty())
    for (const auto& e : m.entries)
      if (std::find(m.metric_order.begin(), m.metric_order.end(), e.metric) ==
          m.metric_order.end())
        m.metric_order.push_back(e.metric);
  m.validate();
  return m;
}

inline json response_model_to_json(const ResponseModel& m) {
  json j;
  if (!m.name.empty()) j["name"] = m.name;
  if (!m.base.empty()) {
    json b;
    for (const auto& [k, v] : m.base) b[k] = v;
    j["base"] = std::move(b);
  }
  if (!m.metric_order.empty()) j["metrics"] = m.metric_order;
  if (!m.driver_anchor.empty()) {
    json a;
    for (const auto& [driver, x] : m.driver_anchor) a[driver] = x;
    j["anchors"] = std::move(a);
  }
  if (!m.row_picks.empty()) {
    json rp;
    for (const auto& [driver, picks] : m.row_picks) {
      json p;
      for (const auto& [metric, x] : picks) p[metric] = x;
      rp[driver] = std::move(p);
    }
    j["row_picks"] = std::move(rp);
  }
  json entries = json::array();
  for (const auto& e : m.entries) {
    json je;
    je["driver"] = e.driver;
    if (!e.driver_unit.empty()) je["driver_unit"] = e.driver_unit;
    je["metric"] = e.metric;
    if (!e.metric_unit.empty()) je["unit"] = e.metric_unit;
    if (e.kind == ResponseEntry::Kind::lookup) {
      je["kind"] = "lookup";
      json knots = json::array();
      for (const auto& [x, y] : e.knots) knots.push_back({x, y});
      je["knots"] = std::move(knots);
    } else {
      je["kind"] = "linear";
      je["base"] = e.base;
      je["slope"] = e.slope;
      je["ref"] = e.ref;
    }
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

// ---------------------------------------------------------------------------
// Scenario triples: {scenarios: [{metric, unit?, worst, base, best,
// provenance?}...]} or a bare array of rows.
// ---------------------------------------------------------------------------

inline std::vector<MetricScenario> scenarios_from_json(const json& j, const std::string& origin) {
  const json* rows = nullptr;
  if (j.is_array())
    rows = &j;
  else if (j.is_object() && j.contains("scenarios"))
    rows = &j["scenarios"];
  else
    raise(errc::schema_error, origin + ": expected {scenarios: [...]} or an array");
  require(rows->is_array(), errc::schema_error, origin + ".scenarios must be an array");
  std::vector<MetricScenario> out;
  for (const auto& r : *rows) {
    MetricScenario s;
    s.metric = detail::get_string(r, "metric", origin);
    if (r.contains("unit")) s.unit = detail::get_string(r, "unit", origin);
    s.triple.worst = detail::get_number(r, "worst", origin);
    s.triple.base = detail::get_number(r, "base", origin);
    s.triple.best = detail::get_number(r, "best", origin);
    s.provenance = r.contains("provenance") ? detail::get_string(r, "provenance", origin)
                                            : std::string("supplied");
    require(s.provenance == "supplied" || s.provenance == "derived", errc::schema_error,
            origin + ": provenance must be \"supplied\" or \"derived\"");
    out.push_back(std::move(s));
  }
  validate_scenarios(out);
  return out;
}

inline std::vector<MetricScenario> load_scenarios(const std::string& path) {
  return scenarios_from_json(load_json_file(path), path);
}

inline json scenarios_to_json(std::span<const MetricScenario> scenarios) {
  json rows = json::array();
  for (const auto& s : scenarios) {
    json r;
    r["metric"] = s.metric;
    if (!s.unit.empty()) r["unit"] = s.unit;
    r["worst"] = s.triple.worst;
    r["base"] = s.triple.base;
    r["best"] = s.triple.best;
    r["provenance"] = s.provenance;
    rows.push_back(std::move(r));
  }
  return json{{"scenarios", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// Feature tables: CSV header entity,period,<column...>; empty cell = missing.
// ---------------------------------------------------------------------------

inline FeatureTable load_feature_table(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"entity", "period"}, path, true);
  require(csv.header.size() > 2, errc::schema_error, path + ": no feature columns");
  FeatureTable t;
  for (size_t j = 2; j < csv.header.size(); ++j) t.columns.push_back({csv.header[j], ""});
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == csv.header.size(), errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    t.row_ids.emplace_back(fields[0], fields[1]);
    std::vector<std::optional<double>> row;
    for (size_t j = 2; j < fields.size(); ++j) {
      if (fields[j].empty())
        row.push_back(std::nullopt);
      else
        row.push_back(parse_number(fields[j], path, line_no));
    }
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

inline std::string feature_table_to_csv(const FeatureTable& t) {
  std::string out = "entity,period";
  for (const auto& c : t.columns) out += "," + csv_escape(c.name);
  out += "\n";
  for (size_t i = 0; i < t.rows.size(); ++i) {
    out += csv_escape(t.row_ids[i].first) + "," + csv_escape(t.row_ids[i].second);
    for (const auto& v : t.rows[i]) out += "," + (v ? fmt_g9(*v) : std::string());
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Firm returns (wide CSV: period,<firm...>, chronological rows), sector maps
// (firm,sector), and graph export (firm_a,firm_b,weight).
// ---------------------------------------------------------------------------

inline std::vector<FirmSeries> load_return_series(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"period"}, path, true);
  require(csv.header.size() >= 3, errc::schema_error, path + ": need at least two firm columns");
  std::vector<FirmSeries> out;
  for (size_t j = 1; j < csv.header.size(); ++j) out.push_back({csv.header[j], {}});
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == csv.header.size(), errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    for (size_t j = 1; j < fields.size(); ++j)
      out[j - 1].returns.push_back(parse_number(fields[j], path, line_no));
  }
  return out;
}

inline std::map<std::string, std::string> load_sectors(const std::string& path) {
  CsvFile csv = read_csv(path);
  expect_columns(csv, {"firm", "sector"}, path);
  std::map<std::string, std::string> out;
  for (const auto& [line_no, fields] : csv.rows) {
    require(fields.size() == 2, errc::parse_error,
            path + ":" + std::to_string(line_no) + ": wrong field count");
    require(!out.count(fields[0]), errc::schema_error,
            path + ":" + std::to_string(line_no) + ": duplicate firm \"" + fields[0] + "\"");
    out[fields[0]] = fields[1];
  }
  return out;
}

inline std::string graph_to_csv(const FirmGraph& g) {
  std::string out = "firm_a,firm_b,weight\n";
  for (const auto& e : g.edges)
    out += csv_escape(g.nodes[e.a].firm) + "," + csv_escape(g.nodes[e.b].firm) + "," +
           fmt_g9(e.weight) + "\n";
  return out;
}

inline json graph_to_json(const FirmGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"firm", n.firm}, {"sector", n.sector}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"firm_a", g.nodes[e.a].firm},
                     {"firm_b", g.nodes[e.b].firm},
                     {"weight", e.weight}});
  return json{{"edges", std::move(edges)}, {"nodes", std::move(nodes)}};
}

}  // namespace riskrank
