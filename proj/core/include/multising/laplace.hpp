#pragma once

// Laplace approximation to the Diaconis-Ylvisaker normalising constant
//   C(s, g) = integral exp{ s'T(lambda) - g log Psi(lambda) } d lambda
// over the active coordinates (all p main effects plus the interactions
// switched on in delta), and the log marginal likelihood of a graph as the
// ratio C(s + y, g + n) / C(s, g).

#include <vector>

#include "multising/priors.hpp"
#include "multising/types.hpp"

namespace multising {

struct LaplaceOptions {
  double tolerance = 1e-8;  // infinity norm of the gradient
  int max_iterations = 100;
};

struct LaplaceResult {
  double log_c = 0.0;
  std::vector<double> mode;  // main effects, then active interactions
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
  std::size_t dimension = 0;
};

/// Damped Newton from lambda = 0 to the kernel's stationary point, then
/// log C = kernel(mode) + (d / 2) log(2 pi) - log|A| / 2, A = -Hessian.
LaplaceResult laplace_log_normconst(const CanonicalParams& s, double g,
                                    const EdgeIndicators& delta,
                                    const LaplaceOptions& options = {});

struct LogMarginal {
  double value = 0.0;
  bool converged = false;
};

/// log C(s + y, g + n) - log C(s, g) for the graph delta.
LogMarginal log_marginal(const MarginalCounts& y, const DyHyper& hyper,
                         const EdgeIndicators& delta,
                         const LaplaceOptions& options = {});

/// Fictive counts shifted by observed counts: (s + y, g + n).
DyHyper posterior_hyper(const DyHyper& prior, const MarginalCounts& y);

}  // namespace multising
