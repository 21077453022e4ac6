#pragma once

// Metropolis-Hastings updates for the graph-similarity parameters
// (theta, epsilon) and the edge-specific sparsity parameters nu. Both
// engines call these after their own graph update.
//
// The cross-group prior of one edge's indicator vector delta_rj in {0,1}^q is
//   p(delta_rj | nu_rj, theta) = exp(nu_rj 1'delta_rj + sum_{x<h} theta_xh
//                                    delta_rj,x delta_rj,h) / C(nu_rj, theta)
// whose one-group conditionals are mrf_edge_logprob. C is enumerated over
// the 2^q patterns, so q is capped at kMaxGroups.

#include <cstdint>
#include <span>
#include <vector>

#include "multising/priors.hpp"
#include "multising/rng.hpp"

namespace multising {

inline constexpr std::size_t kMaxGroups = 16;

struct ThetaProposal {
  double alpha_t = 2.0;
  double beta_t = 2.0;
  void validate() const;
};

struct NuProposal {
  double a_t = 1.0;
  double b_t = 2.0;
  void validate() const;
};

struct MoveCounter {
  std::uint64_t attempted = 0;
  std::uint64_t accepted = 0;
  void record(bool ok) noexcept {
    ++attempted;
    if (ok) ++accepted;
  }
  double rate() const noexcept {
    return attempted ? static_cast<double>(accepted) / static_cast<double>(attempted) : 0.0;
  }
};

struct MoveResult {
  bool attempted = false;
  bool accepted = false;
  double log_ratio = 0.0;
};

/// Bit x of mask e is delta_x[e].
std::vector<std::uint32_t> edge_masks(std::span<const EdgeIndicators> deltas);

/// Change in the one-edge conditional log-probability of group x's edge e
/// when its bit is flipped, given the other groups' bits.
double mrf_flip_delta(std::span<const EdgeIndicators> delta,
                      const CouplingState& coupling, std::size_t x, std::size_t e);

/// Joint log-probability of one edge's cross-group pattern.
double mrf_joint_logprob(std::uint32_t mask, double nu, const CouplingState& state);

/// Log of the (theta, epsilon) full conditional for pair (x, h), up to a
/// constant: theta prior + Bernoulli(omega) + sum over edges of
/// mrf_joint_logprob. Everything but theta_xh / epsilon_xh is read from
/// `state`.
double theta_conditional_logpost(const CouplingState& state, std::size_t x,
                                 std::size_t h, bool epsilon, double theta,
                                 std::span<const std::uint32_t> masks);

/// Log of the nu_rj full conditional up to a constant.
double nu_conditional_logpost(const CouplingState& state, double nu,
                              std::uint32_t mask, const MrfHyper& hyper);

/// Between-model move: toggles epsilon_xh, proposing theta from
/// Gamma(alpha_t, beta_t) when switching on.
MoveResult theta_between_move(CouplingState& state, std::size_t x, std::size_t h,
                              std::span<const std::uint32_t> masks, Rng& rng,
                              const ThetaProposal& prop);

/// Within-model independence move on theta_xh; no-op when epsilon_xh = 0.
MoveResult theta_within_move(CouplingState& state, std::size_t x, std::size_t h,
                             std::span<const std::uint32_t> masks, Rng& rng,
                             const ThetaProposal& prop);

/// Independence move nu = logit(u), u ~ Beta(a_t, b_t).
MoveResult nu_step(CouplingState& state, std::size_t edge, std::uint32_t mask,
                   Rng& rng, const MrfHyper& hyper, const NuProposal& prop);

struct CouplingCounters {
  MoveCounter between;
  MoveCounter within;
  MoveCounter nu;
};

struct CouplingSettings {
  MrfHyper mrf;
  ThetaProposal theta_prop;
  NuProposal nu_prop;
  bool random_scan = false;
};

/// One pass of Step II over all pairs x < h followed by Step III over all
/// edges, in lexicographic order unless `random_scan`.
void coupling_sweep(CouplingState& state, std::span<const EdgeIndicators> deltas,
                    Rng& rng, const CouplingSettings& settings,
                    CouplingCounters& counters);

}  // namespace multising
