#pragma once

// Prior log-densities: MRF edge coupling, Diaconis-Ylvisaker kernel, Normal
// spike-and-slab on lambda, Gamma spike-and-slab on theta, logit-Beta on nu.

#include <cstdint>
#include <span>
#include <vector>

#include "multising/types.hpp"

namespace multising {

/// Beta(a, b) shapes inducing the logit-Beta prior on nu.
struct MrfHyper {
  double a = 1.0;
  double b = 3.0;
  void validate() const;
};

/// Cross-group similarity state shared by both engines.
struct CouplingState {
  std::size_t q = 0;
  std::vector<double> theta;         // q x q, symmetric, zero diagonal
  std::vector<std::uint8_t> epsilon;  // q x q, symmetric, zero diagonal
  std::vector<double> nu;            // one per pair (r, j)
  double omega = 0.6;
  double alpha = 1.0;
  double beta = 2.0;

  CouplingState() = default;
  CouplingState(std::size_t groups, std::size_t edges);

  double theta_at(std::size_t x, std::size_t h) const noexcept {
    return theta[x * q + h];
  }
  bool eps_at(std::size_t x, std::size_t h) const noexcept {
    return epsilon[x * q + h] != 0;
  }
  void set(std::size_t x, std::size_t h, bool eps, double value) noexcept;

  /// theta > 0 exactly when epsilon = 1, and both matrices are symmetric.
  bool consistent() const noexcept;
};

/// Fictive counts s (same layout as CanonicalParams) and fictive sample size g.
struct DyHyper {
  CanonicalParams s;
  double g = 0.02;
  void validate() const;
};

struct SpikeSlabHyper {
  double rho = 2.0;    // slab variance
  double gamma = 0.5;  // spike variance
  void validate() const;
};

/// log p(delta | delta_other, nu, theta) for one edge of one group.
double mrf_edge_logprob(bool delta, std::span<const std::uint8_t> delta_other,
                        double nu, std::span<const double> theta_x);

/// Sum of mrf_edge_logprob over all pairs of group x's graph. `delta_other`
/// holds the q-1 other graphs and `theta_x` their similarities with x.
double mrf_graph_logprob(const EdgeIndicators& delta_x,
                         std::span<const EdgeIndicators> delta_other,
                         std::span<const double> nu,
                         std::span<const double> theta_x);

/// Unnormalised DY log-kernel; interactions outside `delta` are ignored.
double dy_log_kernel(const CanonicalParams& lambda, const DyHyper& hyper,
                     const EdgeIndicators& delta);

/// Normal spike-and-slab log-density of one node row (element 0 is the main
/// effect, always slab; element 1 + j is gated by delta_row[j]).
double spike_slab_logpdf(std::span<const double> row,
                         std::span<const std::uint8_t> delta_row,
                         const SpikeSlabHyper& hyper);

/// Point mass at zero when epsilon = 0, Gamma(alpha, rate beta) otherwise.
double theta_prior_logpdf(double theta, bool epsilon, double alpha, double beta);

/// Density of nu = logit(q) when q ~ Beta(a, b).
double nu_logpdf(double nu, double a, double b);

/// Fictive counts from spreading g uniformly over the 2^p cells.
DyHyper default_dy_hyper(std::size_t p, double g);

}  // namespace multising
