#pragma once

// Exact and node-conditional Ising likelihoods.
//
// A configuration z in {0,1}^p is identified with the integer whose bit r is
// z_r. Exact paths enumerate all 2^p cells and refuse p > kMaxEnumerationNodes.

#include <cstdint>
#include <span>
#include <vector>

#include "multising/rng.hpp"
#include "multising/types.hpp"

namespace multising {

/// Unnormalised log-density of every cell, indexed by the cell's bit pattern.
std::vector<double> cell_energies(const CanonicalParams& lambda);

/// log of the normalisation constant, summed over all 2^p cells.
double log_psi(const CanonicalParams& lambda);

/// Cell probabilities in bit-pattern order; sums to one.
std::vector<double> exact_cell_probs(const CanonicalParams& lambda);

MarginalCounts marginal_counts(const BinaryDataset& data);

/// Exact log-likelihood computed from sufficient statistics.
double ising_loglik(const BinaryDataset& data, const CanonicalParams& lambda);

/// Row r of the lower-triangular parameterisation: element 0 is the main
/// effect lambda_rr, element 1 + j is lambda_rj for j < r.
std::vector<double> node_row(const CanonicalParams& lambda, std::size_t r);

/// Conditional log-likelihood of column r given columns j < r.
double node_conditional_loglik(const BinaryDataset& data,
                               std::span<const double> row, std::size_t r);

/// Sum of the p node-conditional log-likelihoods; no dimension limit.
double quasi_loglik(const BinaryDataset& data, const CanonicalParams& lambda);

/// Single-site Gibbs sampler on the joint Ising distribution (symmetric
/// reading of the interactions). Starts at z = 0, discards `burn_in` sweeps and
/// keeps one state every `thin` sweeps.
BinaryDataset gibbs_sample(const CanonicalParams& lambda, std::size_t n,
                           std::size_t burn_in, std::size_t thin, Rng& rng);
BinaryDataset gibbs_sample(const CanonicalParams& lambda, std::size_t n,
                           std::size_t burn_in, std::size_t thin,
                           std::uint64_t seed);

}  // namespace multising
