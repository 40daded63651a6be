#pragma once

// Straight-line reimplementations of the weighting, appraisal, and utility
// math, written formula by formula with plain index loops and no shared code
// with the library. Cross-checks the production pipeline on random inputs.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

struct Pair {
  double mu;
  double nu;
};

using Matrix = std::vector<std::vector<Pair>>;  // [alternative][criterion]

// true = benefit, false = cost
using Kinds = std::vector<bool>;

inline double ratio_entropy_term(Pair x) {
  double pi = 1.0 - x.mu - x.nu;
  double num = (x.mu < x.nu ? x.mu : x.nu) + pi;
  double den = (x.mu > x.nu ? x.mu : x.nu) + pi;
  return den == 0.0 ? 1.0 : num / den;
}

inline double hesitation_entropy_term(Pair x) { return 1.0 - x.mu - x.nu; }

inline double log_entropy_term(Pair x) {
  const double ln2 = std::log(2.0);
  double s = x.mu + x.nu;
  double acc = 0.0;
  if (x.mu > 0.0) acc += x.mu * std::log(x.mu);
  if (x.nu > 0.0) acc += x.nu * std::log(x.nu);
  if (s > 0.0) acc -= s * std::log(s);
  acc -= (1.0 - s) * ln2;
  double e = -acc / ln2;
  if (e < 0.0) e = 0.0;
  if (e > 1.0) e = 1.0;
  return e;
}

// measure: 0 = ratio (szmidt), 1 = hesitation (burillo), 2 = log (vlachos)
inline std::vector<double> entropy_weights(const Matrix& m, int measure) {
  size_t rows = m.size(), cols = m[0].size();
  std::vector<double> entropy(cols, 0.0);
  for (size_t j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (size_t i = 0; i < rows; ++i) {
      Pair x = m[i][j];
      if (measure == 0) sum += ratio_entropy_term(x);
      if (measure == 1) sum += hesitation_entropy_term(x);
      if (measure == 2) sum += log_entropy_term(x);
    }
    entropy[j] = sum / static_cast<double>(rows);
  }
  double denom = 0.0;
  for (size_t j = 0; j < cols; ++j) denom += 1.0 - entropy[j];
  std::vector<double> w(cols);
  for (size_t j = 0; j < cols; ++j) w[j] = (1.0 - entropy[j]) / denom;
  return w;
}

// variant: 0 = membership, 1 = score, 2 = distance (same tokens as the CLI)
inline double effective_deviation(Pair x, Pair avg, int variant) {
  if (variant == 0) return x.mu - avg.mu;
  if (variant == 1) return ((x.mu - x.nu) - (avg.mu - avg.nu)) / 2.0;
  double pix = 1.0 - x.mu - x.nu;
  double pia = 1.0 - avg.mu - avg.nu;
  double d = 0.5 * (std::fabs(x.mu - avg.mu) + std::fabs(x.nu - avg.nu) +
                    std::fabs(pix - pia));
  double sx = x.mu - x.nu, sa = avg.mu - avg.nu;
  if (sx > sa) return d;
  if (sx < sa) return -d;
  return 0.0;
}

struct Appraisal {
  std::vector<Pair> averages;
  std::vector<std::vector<double>> pda;
  std::vector<std::vector<double>> nda;
  std::vector<double> s;
};

inline Appraisal edas(const Matrix& m, const Kinds& kinds, const std::vector<double>& w,
                      int variant) {
  size_t rows = m.size(), cols = m[0].size();
  Appraisal out;
  out.averages.resize(cols);
  for (size_t j = 0; j < cols; ++j) {
    double mu = 0.0, nu = 0.0;
    for (size_t i = 0; i < rows; ++i) {
      mu += m[i][j].mu;
      nu += m[i][j].nu;
    }
    out.averages[j] = {mu / static_cast<double>(rows), nu / static_cast<double>(rows)};
  }
  out.pda.assign(rows, std::vector<double>(cols, 0.0));
  out.nda.assign(rows, std::vector<double>(cols, 0.0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      double dev = effective_deviation(m[i][j], out.averages[j], variant);
      if (!kinds[j]) dev = -dev;
      if (dev > 0.0) out.pda[i][j] = dev;
      if (dev < 0.0) out.nda[i][j] = -dev;
    }
  out.s.resize(rows);
  for (size_t i = 0; i < rows; ++i) {
    double p = 0.0, q = 0.0;
    for (size_t j = 0; j < cols; ++j) {
      p += w[j] * out.pda[i][j];
      q += w[j] * out.nda[i][j];
    }
    out.s[i] = (p + q > 0.0) ? p / (p + q) : 0.5;
  }
  return out;
}

inline std::vector<double> marcos(const std::vector<double>& s) {
  double hi = *std::max_element(s.begin(), s.end());
  double lo = *std::min_element(s.begin(), s.end());
  std::vector<double> u(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    double kp = s[i] / hi;
    double km = s[i] > 0.0 ? lo / s[i] : 1.0;
    u[i] = (kp + 1.0 - km) / 2.0;
  }
  return u;
}

}  // namespace oracle
