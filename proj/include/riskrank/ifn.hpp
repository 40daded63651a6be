#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "riskrank/errors.hpp"

namespace riskrank {

// Intuitionistic fuzzy number: membership mu and non-membership nu with
// mu + nu <= 1. The slack 1 - mu - nu is the hesitation margin.
struct Ifn {
  double mu = 0.0;
  double nu = 0.0;

  double hesitation() const { return 1.0 - mu - nu; }
  double score() const { return mu - nu; }
  double accuracy() const { return mu + nu; }
};

inline std::string ifn_str(const Ifn& x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.9g, %.9g)", x.mu, x.nu);
  return buf;
}

// Validating constructor. A sum overshoot within 1e-12 is treated as float
// noise and repaired by clamping nu; anything larger is rejected.
inline Ifn make_ifn(double mu, double nu) {
  require(std::isfinite(mu) && std::isfinite(nu), errc::invalid_ifn,
          "membership values must be finite");
  require(mu >= 0.0 && mu <= 1.0 && nu >= 0.0 && nu <= 1.0, errc::invalid_ifn,
          "membership and non-membership must lie in [0, 1], got " + ifn_str({mu, nu}));
  double sum = mu + nu;
  if (sum > 1.0) {
    require(sum <= 1.0 + 1e-12, errc::invalid_ifn,
            "membership plus non-membership exceeds 1: " + ifn_str({mu, nu}));
    nu = 1.0 - mu;
  }
  return {mu, nu};
}

// Normalized Hamming distance over (mu, nu, hesitation).
inline double ifn_distance(const Ifn& a, const Ifn& b) {
  return 0.5 * (std::fabs(a.mu - b.mu) + std::fabs(a.nu - b.nu) +
                std::fabs(a.hesitation() - b.hesitation()));
}

// Total order: score first, then accuracy, then mu as a float-noise tiebreak
// (score and accuracy together already determine the pair exactly).
inline bool ifn_less(const Ifn& a, const Ifn& b) {
  if (a.score() != b.score()) return a.score() < b.score();
  if (a.accuracy() != b.accuracy()) return a.accuracy() < b.accuracy();
  return a.mu < b.mu;
}

inline int ifn_compare(const Ifn& a, const Ifn& b) {
  if (ifn_less(a, b)) return -1;
  if (ifn_less(b, a)) return 1;
  return 0;
}

inline void check_weights(std::span<const double> weights) {
  require(!weights.empty(), errc::bad_weights, "weight vector is empty");
  double sum = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, errc::bad_weights, "weights must be non-negative");
    sum += w;
  }
  require(std::fabs(sum - 1.0) <= 1e-9, errc::bad_weights, "weights must sum to 1");
}

// Weighted averaging aggregation:
//   mu = 1 - prod (1 - mu_k)^w_k,  nu = prod nu_k^w_k.
// Idempotent, bounded by the inputs, and closed over valid pairs.
inline Ifn ifwa_aggregate(std::span<const Ifn> items, std::span<const double> weights) {
  require(!items.empty(), errc::empty_input, "aggregation over empty list");
  require(items.size() == weights.size(), errc::bad_weights,
          "weight count does not match item count");
  check_weights(weights);
  double prod_one_minus_mu = 1.0;
  double prod_nu = 1.0;
  for (size_t k = 0; k < items.size(); ++k) {
    prod_one_minus_mu *= std::pow(1.0 - items[k].mu, weights[k]);
    prod_nu *= std::pow(items[k].nu, weights[k]);
  }
  return make_ifn(std::min(1.0, std::max(0.0, 1.0 - prod_one_minus_mu)),
                  std::min(1.0, std::max(0.0, prod_nu)));
}

// Non-empty ordered collection of candidate evaluations for one cell.
struct HesitantIfn {
  std::vector<Ifn> elements;
};

// Collapse a hesitant cell to a single pair. A singleton passes through
// bit-exactly; larger cells aggregate with equal weights.
inline Ifn flatten_hesitant(const HesitantIfn& cell) {
  require(!cell.elements.empty(), errc::empty_input, "hesitant cell has no elements");
  if (cell.elements.size() == 1) return cell.elements.front();
  std::vector<double> w(cell.elements.size(), 1.0 / static_cast<double>(cell.elements.size()));
  return ifwa_aggregate(cell.elements, w);
}

}  // namespace riskrank
