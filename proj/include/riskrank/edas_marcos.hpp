#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "riskrank/decision.hpp"
#include "riskrank/entropy.hpp"
#include "riskrank/errors.hpp"
#include "riskrank/ifn.hpp"

namespace riskrank {

// How a cell is reduced to the real number that distance-from-average
// appraisal works on:
//   membership: use mu directly (the default, and the simplest reading)
//   score:      use (mu - nu + 1) / 2, folding non-membership in
//   distance:   signed normalized-Hamming distance to the average pair
enum class EdasVariant { membership, score, distance };

inline const char* edas_variant_name(EdasVariant v) {
  switch (v) {
    case EdasVariant::membership: return "membership";
    case EdasVariant::score: return "score";
    case EdasVariant::distance: return "distance";
  }
  return "unknown";
}

inline EdasVariant parse_edas_variant(const std::string& s) {
  if (s == "membership") return EdasVariant::membership;
  if (s == "score") return EdasVariant::score;
  if (s == "distance") return EdasVariant::distance;
  raise(errc::bad_argument,
        "appraisal variant must be one of membership, score, distance; got \"" + s + "\"");
}

struct EdasScores {
  std::vector<Ifn> averages;             // per-criterion mean (mu, nu)
  std::vector<std::vector<double>> pda;  // positive distance from average
  std::vector<std::vector<double>> nda;  // negative distance from average
  std::vector<double> pdas;
  std::vector<double> ndas;
  std::vector<double> s;  // appraisal score in [0, 1]
};

struct MarcosResult {
  double i_star = 0.0;   // best appraisal score
  double i_minus = 0.0;  // worst appraisal score
  std::vector<double> k_plus;
  std::vector<double> k_minus;
  std::vector<double> u;         // utility in [0, 1]
  std::vector<size_t> order;     // alternative indices, best first
  std::vector<size_t> ranks;     // 1-based rank per alternative
};

struct RankingResult {
  WeightVector weights;
  EdasScores edas;
  MarcosResult marcos;
};

// Per-criterion arithmetic mean of mu and of nu. Means of valid pairs are
// valid pairs again.
inline std::vector<Ifn> average_solution(const std::vector<std::vector<Ifn>>& matrix) {
  require(!matrix.empty(), errc::empty_input, "average of empty matrix");
  size_t n = matrix.front().size();
  require(n > 0, errc::empty_input, "matrix has no criteria");
  for (const auto& row : matrix)
    require(row.size() == n, errc::schema_error, "matrix is not rectangular");
  std::vector<Ifn> avg(n);
  for (size_t j = 0; j < n; ++j) {
    double mu = 0.0, nu = 0.0;
    for (const auto& row : matrix) {
      mu += row[j].mu;
      nu += row[j].nu;
    }
    double m = static_cast<double>(matrix.size());
    avg[j] = make_ifn(mu / m, nu / m);
  }
  return avg;
}

namespace detail {

// Signed deviation of a cell from the column average under the chosen
// variant; positive means "better than average" before the kind flip.
inline double signed_deviation(const Ifn& cell, const Ifn& avg, EdasVariant variant) {
  switch (variant) {
    case EdasVariant::membership:
      return cell.mu - avg.mu;
    case EdasVariant::score:
      return 0.5 * (cell.score() + 1.0) - 0.5 * (avg.score() + 1.0);
    case EdasVariant::distance: {
      double d = ifn_distance(cell, avg);
      double sign = cell.score() > avg.score() ? 1.0 : (cell.score() < avg.score() ? -1.0 : 0.0);
      return sign * d;
    }
  }
  return 0.0;
}

}  // namespace detail

struct PdaNda {
  std::vector<std::vector<double>> pda;
  std::vector<std::vector<double>> nda;
};

// Positive / negative distance from average per cell. Benefit criteria score
// above-average cells in PDA; cost criteria swap the roles.
inline PdaNda pda_nda(const std::vector<std::vector<Ifn>>& matrix, std::span<const Ifn> averages,
                      std::span<const CriterionKind> kinds,
                      EdasVariant variant = EdasVariant::membership) {
  require(!matrix.empty(), errc::empty_input, "empty matrix");
  size_t n = averages.size();
  require(kinds.size() == n, errc::schema_error, "criterion kind count mismatch");
  PdaNda out;
  out.pda.assign(matrix.size(), std::vector<double>(n, 0.0));
  out.nda.assign(matrix.size(), std::vector<double>(n, 0.0));
  for (size_t i = 0; i < matrix.size(); ++i) {
    require(matrix[i].size() == n, errc::schema_error, "matrix is not rectangular");
    for (size_t j = 0; j < n; ++j) {
      double dev = detail::signed_deviation(matrix[i][j], averages[j], variant);
      if (kinds[j] == CriterionKind::cost) dev = -dev;
      out.pda[i][j] = std::max(0.0, dev);
      out.nda[i][j] = std::max(0.0, -dev);
    }
  }
  return out;
}

struct Appraisal {
  std::vector<double> pdas;
  std::vector<double> ndas;
  std::vector<double> s;
};

// Weighted sums of the PDA/NDA rows, then S = PDAS / (PDAS + NDAS). An
// alternative sitting exactly at the average everywhere has no signal either
// way; its score is pinned at the neutral 0.5.
inline Appraisal appraisal_scores(const std::vector<std::vector<double>>& pda,
                                  const std::vector<std::vector<double>>& nda,
                                  const WeightVector& weights) {
  require(pda.size() == nda.size() && !pda.empty(), errc::schema_error,
          "PDA/NDA dimension mismatch");
  const auto& w = weights.values;
  Appraisal out;
  out.pdas.reserve(pda.size());
  out.ndas.reserve(pda.size());
  out.s.reserve(pda.size());
  for (size_t i = 0; i < pda.size(); ++i) {
    require(pda[i].size() == w.size() && nda[i].size() == w.size(), errc::weight_mismatch,
            "weight count does not match criterion count");
    double p = 0.0, q = 0.0;
    for (size_t j = 0; j < w.size(); ++j) {
      p += w[j] * pda[i][j];
      q += w[j] * nda[i][j];
    }
    out.pdas.push_back(p);
    out.ndas.push_back(q);
    out.s.push_back(p + q > 0.0 ? p / (p + q) : 0.5);
  }
  return out;
}

// Compromise utilities from appraisal scores:
//   I* = max s, I- = min s, K+ = s/I*, K- = I-/s, U = (K+ + 1 - K-) / 2.
// An alternative with s = 0 when I- = 0 is its own anti-ideal: K- := 1.
inline MarcosResult marcos_utilities(std::span<const double> s) {
  require(s.size() >= 2, errc::too_few_samples, "ranking needs at least two alternatives");
  MarcosResult r;
  r.i_star = *std::max_element(s.begin(), s.end());
  r.i_minus = *std::min_element(s.begin(), s.end());
  require(r.i_star > 0.0, errc::degenerate_scores,
          "all appraisal scores are zero; utilities are undefined");
  for (double si : s) {
    r.k_plus.push_back(si / r.i_star);
    r.k_minus.push_back(si > 0.0 ? r.i_minus / si : 1.0);
    r.u.push_back(0.5 * (r.k_plus.back() + 1.0 - r.k_minus.back()));
  }
  r.order.resize(s.size());
  std::iota(r.order.begin(), r.order.end(), size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](size_t a, size_t b) {
    if (r.u[a] != r.u[b]) return r.u[a] > r.u[b];
    return s[a] > s[b];
  });
  r.ranks.resize(s.size());
  for (size_t pos = 0; pos < r.order.size(); ++pos) r.ranks[r.order[pos]] = pos + 1;
  return r;
}

struct RankOptions {
  EdasVariant variant = EdasVariant::membership;
  EntropyMeasure measure = EntropyMeasure::szmidt;
};

// Full pipeline: flatten hesitant cells, obtain weights (supplied or entropy
// derived), appraise against the average solution, map to utilities and ranks.
inline RankingResult rank(const DecisionProblem& problem, const RankOptions& options = {}) {
  problem.validate();
  require(problem.alternative_count() >= 2, errc::schema_error,
          "ranking needs at least two alternatives");
  RankingResult out;
  out.weights = problem.weights ? *problem.weights : entropy_weights(problem, options.measure);
  auto flat = problem.flattened();
  std::vector<CriterionKind> kinds;
  kinds.reserve(problem.criteria.size());
  for (const auto& c : problem.criteria) kinds.push_back(c.kind);
  out.edas.averages = average_solution(flat);
  auto pn = pda_nda(flat, out.edas.averages, kinds, options.variant);
  out.edas.pda = std::move(pn.pda);
  out.edas.nda = std::move(pn.nda);
  auto ap = appraisal_scores(out.edas.pda, out.edas.nda, out.weights);
  out.edas.pdas = std::move(ap.pdas);
  out.edas.ndas = std::move(ap.ndas);
  out.edas.s = std::move(ap.s);
  out.marcos = marcos_utilities(out.edas.s);
  return out;
}

}  // namespace riskrank
