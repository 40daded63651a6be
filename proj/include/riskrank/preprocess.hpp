#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskrank/errors.hpp"
#include "riskrank/stats.hpp"

namespace riskrank {

// Rectangular numeric panel with explicit missingness. Rows are identified
// by (entity, period); columns carry a name and an optional unit.
struct FeatureTable {
  struct Column {
    std::string name;
    std::string unit;
  };
  std::vector<std::pair<std::string, std::string>> row_ids;  // (entity, period)
  std::vector<Column> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  size_t row_count() const { return rows.size(); }
  size_t column_count() const { return columns.size(); }

  void validate() const {
    require(!columns.empty(), errc::schema_error, "feature table has no columns");
    require(rows.size() == row_ids.size(), errc::schema_error,
            "row id count does not match row count");
    for (const auto& row : rows)
      require(row.size() == columns.size(), errc::schema_error, "feature table is ragged");
    for (size_t a = 0; a < columns.size(); ++a)
      for (size_t b = a + 1; b < columns.size(); ++b)
        require(columns[a].name != columns[b].name, errc::schema_error,
                "duplicate column \"" + columns[a].name + "\"");
  }
};

struct ZscoreColumn {
  std::vector<std::optional<double>> values;
  bool constant = false;  // flagged instead of failing; values are all zero
};

// Standardize present values to mean 0 and population (n denominator) std 1.
// Missing entries pass through untouched. A constant column cannot be
// standardized; it becomes all zeros with the flag set.
inline ZscoreColumn zscore_normalize(std::span<const std::optional<double>> column) {
  std::vector<double> present;
  for (const auto& v : column)
    if (v) present.push_back(*v);
  require(present.size() >= 2, errc::too_few_samples,
          "z-score needs at least two present values");
  double m = mean(present);
  double sd = population_stddev(present);
  ZscoreColumn out;
  out.values.assign(column.begin(), column.end());
  if (sd == 0.0) {
    out.constant = true;
    for (auto& v : out.values)
      if (v) v = 0.0;
    return out;
  }
  for (auto& v : out.values)
    if (v) v = (*v - m) / sd;
  return out;
}

// Affine map sending the column minimum to lo and maximum to hi.
inline std::vector<std::optional<double>> minmax_scale(
    std::span<const std::optional<double>> column, double lo, double hi) {
  require(hi > lo, errc::bad_range, "min-max target range is empty");
  std::vector<double> present;
  for (const auto& v : column)
    if (v) present.push_back(*v);
  require(present.size() >= 2, errc::too_few_samples,
          "min-max scaling needs at least two present values");
  auto [mn_it, mx_it] = std::minmax_element(present.begin(), present.end());
  double mn = *mn_it, mx = *mx_it;
  require(mx > mn, errc::constant_column, "min-max scaling of a constant column");
  std::vector<std::optional<double>> out(column.begin(), column.end());
  for (auto& v : out)
    if (v) v = lo + (*v - mn) * (hi - lo) / (mx - mn);
  return out;
}

namespace detail {

// Distance between two rows over mutually observed z-scored columns, scaled
// by the overlap so rows with different missingness patterns compare fairly:
// sqrt(mean of squared differences over shared columns).
inline std::optional<double> row_distance(const std::vector<std::optional<double>>& a,
                                          const std::vector<std::optional<double>>& b) {
  double ss = 0.0;
  size_t shared = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] && b[j]) {
      double d = *a[j] - *b[j];
      ss += d * d;
      ++shared;
    }
  }
  if (shared == 0) return std::nullopt;
  return std::sqrt(ss / static_cast<double>(shared));
}

}  // namespace detail

// Fill missing cells with the mean of the k nearest rows. Distances are
// computed on a z-scored snapshot of the original table, fills come from the
// original (unscaled, unmodified) values, and a candidate neighbor must have
// the target column observed. Ties on distance break by row index.
inline FeatureTable knn_impute(const FeatureTable& table, int k) {
  table.validate();
  require(k >= 1, errc::bad_argument, "k must be at least 1");

  bool any_missing = false;
  for (const auto& row : table.rows)
    for (const auto& v : row)
      if (!v) any_missing = true;
  if (!any_missing) return table;

  size_t nrows = table.row_count(), ncols = table.column_count();
  for (size_t j = 0; j < ncols; ++j) {
    bool any = false;
    for (size_t i = 0; i < nrows; ++i)
      if (table.rows[i][j]) any = true;
    require(any, errc::all_missing_column,
            "column \"" + table.columns[j].name + "\" has no observed values to impute from");
  }

  // Scaled snapshot for distances only. Columns too sparse or constant
  // contribute zeros, which drop out of differences.
  std::vector<std::vector<std::optional<double>>> scaled(nrows,
                                                         std::vector<std::optional<double>>(ncols));
  for (size_t j = 0; j < ncols; ++j) {
    std::vector<std::optional<double>> col(nrows);
    size_t present = 0;
    for (size_t i = 0; i < nrows; ++i) {
      col[i] = table.rows[i][j];
      if (col[i]) ++present;
    }
    if (present >= 2) {
      auto z = zscore_normalize(col);
      for (size_t i = 0; i < nrows; ++i) scaled[i][j] = z.values[i];
    } else {
      for (size_t i = 0; i < nrows; ++i) scaled[i][j] = col[i] ? std::optional<double>(0.0) : std::nullopt;
    }
  }

  FeatureTable out = table;
  for (size_t i = 0; i < nrows; ++i) {
    for (size_t j = 0; j < ncols; ++j) {
      if (table.rows[i][j]) continue;
      std::vector<std::pair<double, size_t>> candidates;  // (distance, row)
      for (size_t r = 0; r < nrows; ++r) {
        if (r == i || !table.rows[r][j]) continue;
        auto d = detail::row_distance(scaled[i], scaled[r]);
        if (d) candidates.emplace_back(*d, r);
      }
      require(candidates.size() >= static_cast<size_t>(k), errc::not_enough_neighbors,
              "row " + std::to_string(i) + " has only " + std::to_string(candidates.size()) +
                  " usable neighbors for column \"" + table.columns[j].name + "\" (need " +
                  std::to_string(k) + ")");
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first < b.first;
                         return a.second < b.second;
                       });
      double sum = 0.0;
      for (int t = 0; t < k; ++t) sum += *table.rows[candidates[t].second][j];
      out.rows[i][j] = sum / static_cast<double>(k);
    }
  }
  return out;
}

}  // namespace riskrank
