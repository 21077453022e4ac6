#pragma once

// Quasi-likelihood sampler. Each node's conditional logistic likelihood is
// paired with a Normal spike-and-slab prior on its row of lambda; rows are
// updated coordinate-wise by MALA and indicators by Metropolis flips.

#include <vector>

#include "multising/chain.hpp"
#include "multising/rng.hpp"

namespace multising {

struct AbState {
  std::vector<CanonicalParams> lambda;
  std::vector<EdgeIndicators> delta;
  CouplingState coupling;
  double sigma = 0.1;
};

/// Indicator row of node r: element j is delta_rj for j < r.
std::vector<std::uint8_t> delta_row(const EdgeIndicators& delta, std::size_t r);

/// Log of the quasi-posterior contribution of node r (conditional
/// likelihood plus spike-and-slab density of the row).
double node_log_objective(std::span<const double> row,
                          std::span<const std::uint8_t> delta_row,
                          const BinaryDataset& data, std::size_t r,
                          const SpikeSlabHyper& hyper);

/// Gradient of node_log_objective with respect to the row.
std::vector<double> quasi_grad(std::span<const double> row,
                               std::span<const std::uint8_t> delta_row,
                               const BinaryDataset& data, std::size_t r,
                               const SpikeSlabHyper& hyper);

struct MalaCounts {
  std::uint64_t attempted = 0;
  std::uint64_t accepted = 0;
};

/// Coordinate-wise MALA sweep over the row of node r in group x. Only the
/// main effect and the included interactions move, unless `all_coordinates`
/// (used by the Langevin spike update) in which case excluded interactions
/// move under the spike variance.
MalaCounts mala_step(AbState& state, std::size_t x, std::size_t r,
                     const BinaryDataset& data, const SpikeSlabHyper& hyper,
                     Rng& rng, bool all_coordinates = false);

/// Replaces each excluded lambda_rj, j < r, by a N(0, gamma) draw.
void spike_refresh(AbState& state, std::size_t x, std::size_t r,
                   const SpikeSlabHyper& hyper, Rng& rng);

/// Log acceptance ratio of flipping delta_{rj,x} with lambda fixed.
double delta_flip_log_ratio(const AbState& state, std::size_t x, std::size_t r,
                            std::size_t j, const SpikeSlabHyper& hyper);

MoveResult delta_flip_step(AbState& state, std::size_t x, std::size_t r,
                           std::size_t j, const SpikeSlabHyper& hyper, Rng& rng);

AbState initial_ab_state(const SamplerConfig& cfg, std::size_t p, std::size_t q);

ChainOutput run_ab_chain(const GroupedData& data, const SamplerConfig& cfg, Rng& rng);

}  // namespace multising
