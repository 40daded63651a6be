#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "riskrank/errors.hpp"
#include "riskrank/ifn.hpp"

namespace riskrank {

enum class CriterionKind { benefit, cost };

inline const char* criterion_kind_name(CriterionKind k) {
  return k == CriterionKind::benefit ? "benefit" : "cost";
}

inline CriterionKind parse_criterion_kind(const std::string& s) {
  if (s == "benefit") return CriterionKind::benefit;
  if (s == "cost") return CriterionKind::cost;
  raise(errc::schema_error, "criterion kind must be \"benefit\" or \"cost\", got \"" + s + "\"");
}

struct CriterionSpec {
  std::string id;
  std::string name;
  CriterionKind kind = CriterionKind::benefit;
};

// Weights are kept normalized: non-negative and summing to 1.
struct WeightVector {
  std::vector<double> values;
};

// Normalize raw non-negative weights to sum 1.
inline WeightVector normalized_weights(std::vector<double> raw) {
  require(!raw.empty(), errc::bad_weights, "weight vector is empty");
  double sum = 0.0;
  for (double w : raw) {
    require(std::isfinite(w) && w >= 0.0, errc::bad_weights, "weights must be non-negative");
    sum += w;
  }
  require(sum > 0.0, errc::bad_weights, "weights must not all be zero");
  for (double& w : raw) w /= sum;
  return {std::move(raw)};
}

// One ranking problem: alternatives evaluated against criteria, each cell a
// hesitant collection of membership pairs. `weights`, when present, override
// entropy-derived ones downstream.
struct DecisionProblem {
  std::vector<std::string> alternatives;
  std::vector<CriterionSpec> criteria;
  std::vector<std::vector<HesitantIfn>> cells;  // [alternative][criterion]
  std::optional<WeightVector> weights;

  size_t alternative_count() const { return alternatives.size(); }
  size_t criterion_count() const { return criteria.size(); }

  void validate() const {
    require(!alternatives.empty(), errc::schema_error, "no alternatives");
    require(!criteria.empty(), errc::schema_error, "no criteria");
    require(cells.size() == alternatives.size(), errc::schema_error,
            "cell row count does not match alternative count");
    for (size_t i = 0; i < cells.size(); ++i) {
      require(cells[i].size() == criteria.size(), errc::schema_error,
              "cell column count does not match criterion count in row \"" + alternatives[i] +
                  "\"");
      for (const auto& cell : cells[i])
        require(!cell.elements.empty(), errc::schema_error, "empty hesitant cell");
    }
    for (size_t j = 0; j < criteria.size(); ++j) {
      require(!criteria[j].id.empty(), errc::schema_error, "criterion with empty id");
      for (size_t k = j + 1; k < criteria.size(); ++k)
        require(criteria[j].id != criteria[k].id, errc::schema_error,
                "duplicate criterion id \"" + criteria[j].id + "\"");
    }
    if (weights)
      require(weights->values.size() == criteria.size(), errc::weight_mismatch,
              "weight count does not match criterion count");
  }

  // Collapse every hesitant cell to a single pair.
  std::vector<std::vector<Ifn>> flattened() const {
    std::vector<std::vector<Ifn>> out(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      out[i].reserve(cells[i].size());
      for (const auto& cell : cells[i]) out[i].push_back(flatten_hesitant(cell));
    }
    return out;
  }
};

}  // namespace riskrank
