#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "riskrank/decision.hpp"
#include "riskrank/errors.hpp"
#include "riskrank/ifn.hpp"

namespace riskrank {

// Pluggable intuitionistic fuzzy entropy measures, named after their authors
// as is conventional:
//   szmidt:  Szmidt-Kacprzyk ratio form, mean of (min(mu,nu)+pi)/(max(mu,nu)+pi)
//   burillo: Burillo-Bustince hesitation form, mean of pi
//   vlachos: Vlachos-Sergiadis logarithmic form, base-2 Shannon style
enum class EntropyMeasure { szmidt, burillo, vlachos };

inline const char* entropy_measure_name(EntropyMeasure m) {
  switch (m) {
    case EntropyMeasure::szmidt: return "szmidt";
    case EntropyMeasure::burillo: return "burillo";
    case EntropyMeasure::vlachos: return "vlachos";
  }
  return "unknown";
}

inline EntropyMeasure parse_entropy_measure(const std::string& s) {
  if (s == "szmidt") return EntropyMeasure::szmidt;
  if (s == "burillo") return EntropyMeasure::burillo;
  if (s == "vlachos") return EntropyMeasure::vlachos;
  raise(errc::bad_argument,
        "entropy measure must be one of szmidt, burillo, vlachos; got \"" + s + "\"");
}

inline const std::vector<EntropyMeasure>& all_entropy_measures() {
  static const std::vector<EntropyMeasure> ms = {EntropyMeasure::szmidt, EntropyMeasure::burillo,
                                                 EntropyMeasure::vlachos};
  return ms;
}

namespace detail {

inline double entropy_ratio_term(const Ifn& x) {
  double pi = x.hesitation();
  double num = std::min(x.mu, x.nu) + pi;
  double den = std::max(x.mu, x.nu) + pi;
  // den = 0 only when mu = nu = pi = 0, unreachable for a valid pair; define
  // the 0/0 corner as fully uncertain.
  if (den == 0.0) return 1.0;
  return num / den;
}

inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

inline double entropy_log_term(const Ifn& x) {
  double pi = x.hesitation();
  static const double ln2 = std::log(2.0);
  double t = xlnx(x.mu) + xlnx(x.nu) - xlnx(1.0 - pi) - pi * ln2;
  double e = -t / ln2;
  // The expression is confined to [0, 1]; trim float spill at the edges.
  return std::min(1.0, std::max(0.0, e));
}

}  // namespace detail

// Entropy of one criterion column, averaged over alternatives. Every measure
// returns values in [0, 1]: 1 for maximal uncertainty, smaller for columns
// that discriminate between alternatives.
inline double column_entropy(std::span<const Ifn> column,
                             EntropyMeasure measure = EntropyMeasure::szmidt) {
  require(!column.empty(), errc::empty_input, "entropy of empty column");
  double sum = 0.0;
  for (const Ifn& x : column) {
    switch (measure) {
      case EntropyMeasure::szmidt: sum += detail::entropy_ratio_term(x); break;
      case EntropyMeasure::burillo: sum += x.hesitation(); break;
      case EntropyMeasure::vlachos: sum += detail::entropy_log_term(x); break;
    }
  }
  return sum / static_cast<double>(column.size());
}

// Turn per-criterion entropies into weights: w_j = (1 - E_j) / sum(1 - E_k).
// Less entropy (more informative column) earns more weight.
inline WeightVector weights_from_entropies(std::span<const double> entropies) {
  require(!entropies.empty(), errc::empty_input, "no entropies given");
  double denom = 0.0;
  for (double e : entropies) {
    require(std::isfinite(e) && e >= 0.0 && e <= 1.0 + 1e-12, errc::bad_range,
            "entropy values must lie in [0, 1]");
    denom += 1.0 - std::min(e, 1.0);
  }
  require(denom > 0.0, errc::all_criteria_uninformative,
          "every criterion has maximal entropy; weights are undefined");
  std::vector<double> w;
  w.reserve(entropies.size());
  for (double e : entropies) w.push_back((1.0 - std::min(e, 1.0)) / denom);
  return {std::move(w)};
}

inline std::vector<double> column_entropies(const DecisionProblem& problem,
                                            EntropyMeasure measure = EntropyMeasure::szmidt) {
  problem.validate();
  auto flat = problem.flattened();
  std::vector<double> out;
  out.reserve(problem.criterion_count());
  for (size_t j = 0; j < problem.criterion_count(); ++j) {
    std::vector<Ifn> column;
    column.reserve(flat.size());
    for (const auto& row : flat) column.push_back(row[j]);
    out.push_back(column_entropy(column, measure));
  }
  return out;
}

// Objective criterion weights straight from the matrix.
inline WeightVector entropy_weights(const DecisionProblem& problem,
                                    EntropyMeasure measure = EntropyMeasure::szmidt) {
  return weights_from_entropies(column_entropies(problem, measure));
}

}  // namespace riskrank
