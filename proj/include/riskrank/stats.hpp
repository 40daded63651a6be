#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "riskrank/errors.hpp"

namespace riskrank {

inline double mean(std::span<const double> xs) {
  require(!xs.empty(), errc::empty_input, "mean of empty sequence");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Sample standard deviation, n-1 denominator.
inline double sample_stddev(std::span<const double> xs) {
  require(xs.size() >= 2, errc::too_few_samples,
          "sample standard deviation needs at least two values");
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Population standard deviation, n denominator.
inline double population_stddev(std::span<const double> xs) {
  require(!xs.empty(), errc::empty_input, "population stddev of empty sequence");
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.5 * std::sqrt(2.0 / std::acos(-1.0));
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

// Inverse of the standard normal CDF. Solved by bisection plus a Newton
// polish, so accuracy is limited only by erfc itself. The median maps to
// exactly zero, and probabilities corresponding to the standard published
// two-sided z values snap to their six-decimal textbook forms so reported
// intervals match tabulated ones.
inline double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, errc::bad_range,
          "quantile probability must lie strictly between 0 and 1");
  struct Snap {
    double p, z;
  };
  static const Snap snaps[] = {
      {0.5, 0.0},         {0.975, 1.959964}, {0.95, 1.644854},  {0.9, 1.281552},
      {0.025, -1.959964}, {0.05, -1.644854}, {0.1, -1.281552},
  };
  for (const auto& s : snaps) {
    if (std::fabs(p - s.p) < 1e-12) return s.z;
  }
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 64; ++i) {
    double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double d = normal_pdf(x);
    if (d <= 0.0) break;
    double step = (normal_cdf(x) - p) / d;
    if (!std::isfinite(step)) break;
    x -= std::clamp(step, -1.0, 1.0);
  }
  return x;
}

// z multiplier for a symmetric two-sided interval at the given confidence
// level, e.g. 0.95 -> 1.959964.
inline double two_sided_z(double level) {
  require(level > 0.0 && level < 1.0, errc::bad_level,
          "confidence level must lie strictly between 0 and 1");
  return normal_quantile(0.5 * (1.0 + level));
}

// Linear-interpolation quantile over order statistics (the common
// spreadsheet/NumPy default). p in [0, 1].
inline double quantile_linear(std::span<const double> xs, double p) {
  require(!xs.empty(), errc::empty_input, "quantile of empty sequence");
  require(p >= 0.0 && p <= 1.0, errc::bad_range, "quantile probability must lie in [0, 1]");
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  if (s.size() == 1) return s[0];
  double h = p * static_cast<double>(s.size() - 1);
  auto lo = static_cast<size_t>(std::floor(h));
  if (lo >= s.size() - 1) return s.back();
  double frac = h - static_cast<double>(lo);
  return s[lo] + frac * (s[lo + 1] - s[lo]);
}

// Round half away from zero at `decimals` places: 3.125 -> 3.13, -3.125 -> -3.13.
inline double round_half_away(double x, int decimals) {
  double factor = std::pow(10.0, decimals);
  return std::round(x * factor) / factor;
}

inline double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), errc::bad_argument, "correlation inputs differ in length");
  require(a.size() >= 2, errc::too_few_samples, "correlation needs at least two points");
  double ma = mean(a), mb = mean(b);
  double num = 0.0, da = 0.0, db = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double xa = a[i] - ma, xb = b[i] - mb;
    num += xa * xb;
    da += xa * xa;
    db += xb * xb;
  }
  require(da > 0.0 && db > 0.0, errc::zero_variance_series,
          "correlation undefined for a constant series");
  return std::clamp(num / std::sqrt(da * db), -1.0, 1.0);
}

// Deterministic, portable gaussian draws: mt19937_64 is specified exactly by
// the standard, and the Box-Muller transform avoids the unspecified algorithm
// inside std::normal_distribution. Same seed, same bytes, everywhere.
inline std::vector<double> gaussian_samples(std::uint64_t seed, std::size_t n, double mu,
                                            double sigma) {
  std::mt19937_64 eng(seed);
  auto uniform01 = [&eng]() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
  std::vector<double> out;
  out.reserve(n);
  const double two_pi = 2.0 * std::acos(-1.0);
  while (out.size() < n) {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(mu + sigma * (r * std::cos(two_pi * u2)));
    if (out.size() < n) out.push_back(mu + sigma * (r * std::sin(two_pi * u2)));
  }
  return out;
}

}  // namespace riskrank
