#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace multising {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLog2Pi = 1.8378770664093454836;

/// log(1 + e^x) without overflow.
inline double softplus(double x) noexcept {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double logit(double u) noexcept { return std::log(u) - std::log1p(-u); }

inline double log_sum_exp(std::span<const double> xs) noexcept {
  if (xs.empty()) return kNegInf;
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

/// log N(x; 0, variance).
inline double normal_logpdf(double x, double variance) noexcept {
  return -0.5 * (kLog2Pi + std::log(variance)) - 0.5 * x * x / variance;
}

inline double normal_logpdf(double x, double mean, double variance) noexcept {
  return normal_logpdf(x - mean, variance);
}

/// Type-7 sample quantile (linear interpolation) of already sorted values.
inline double quantile_type7(std::span<const double> sorted, double prob) noexcept {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = static_cast<double>(sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline double log_beta_fn(double a, double b) noexcept {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace multising
