#pragma once

// Sampler configuration and the per-chain output shared by both engines.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multising/coupling.hpp"
#include "multising/priors.hpp"
#include "multising/types.hpp"

namespace multising {

enum class Engine { fb, ab, fbs, abs };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& name);

/// Exact-likelihood engines integrate lambda out; quasi-likelihood ones sample it.
inline bool is_exact(Engine e) noexcept { return e == Engine::fb || e == Engine::fbs; }
/// FBS / ABS drop the MRF coupling for independent Bernoulli edge priors.
inline bool is_coupled(Engine e) noexcept { return e == Engine::fb || e == Engine::ab; }

/// How AB refreshes lambda_rj for edges that are currently excluded.
enum class SpikeUpdate {
  langevin,    // MALA step under the spike variance; leaves the quasi-posterior invariant
  prior_draw,  // lambda_rj ~ N(0, gamma), ignoring the likelihood
};

std::string to_string(SpikeUpdate s);
SpikeUpdate spike_update_from_string(const std::string& name);

struct SamplerConfig {
  Engine engine = Engine::fb;
  std::size_t iterations = 10000;
  std::size_t burn_in = 2000;
  std::size_t thin = 1;  // sample retention stride
  std::uint64_t seed = 1;

  // Quasi-likelihood spike-and-slab; defaults depend on p (see resolved()).
  std::optional<double> rho;
  std::optional<double> gamma;
  double sigma = 0.1;
  SpikeUpdate spike_update = SpikeUpdate::langevin;
  bool tune_sigma = false;  // Robbins-Monro on sigma during burn-in only
  double tune_target = 0.5;

  // Diaconis-Ylvisaker fictive sample size; one value or one per group.
  double g = 0.02;
  std::vector<double> g_per_group;
  double laplace_tol = 1e-8;
  int laplace_max_iter = 100;
  std::size_t cache_capacity = 200000;
  std::size_t graph_sweeps = 1;
  double max_laplace_failure_rate = 0.05;

  // MRF prior and its proposals.
  double alpha = 1.0;
  double beta = 2.0;
  double omega = 0.6;
  double a = 1.0;
  double b = 3.0;
  ThetaProposal theta_prop;
  NuProposal nu_prop;
  bool random_scan = false;
  double theta_init = 0.5;

  // Edge inclusion probability for the separate (FBS / ABS) engines.
  std::optional<double> separate_prob;

  bool keep_samples = true;
  bool keep_lambda = false;

  /// Copy with every optional materialised for a p-node problem.
  SamplerConfig resolved(std::size_t p) const;
  /// Throws ConfigError with a precise message.
  void validate() const;
};

struct ChainSample {
  std::size_t iteration = 0;
  std::vector<std::uint8_t> delta;    // q blocks of p(p-1)/2 bits
  std::vector<double> theta;          // pairs x < h
  std::vector<std::uint8_t> epsilon;  // pairs x < h
  std::vector<double> nu;             // per edge
  std::vector<double> lambda;         // AB only: q blocks of p + p(p-1)/2
};

struct ChainOutput {
  Engine engine = Engine::fb;
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t iterations = 0;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::uint64_t seed = 0;

  // Counts over iterations t > burn_in.
  std::size_t retained = 0;
  std::vector<std::vector<std::uint64_t>> inclusion_counts;  // [group][edge]
  std::vector<std::uint64_t> epsilon_counts;                 // pairs x < h

  // Iteration 0 is the initial state; then every `thin`-th iteration.
  std::vector<ChainSample> samples;

  std::map<std::string, MoveCounter> acceptance;
  std::uint64_t laplace_calls = 0;
  std::uint64_t laplace_failures = 0;
  double final_sigma = 0.0;
  double wall_seconds = 0.0;
  SamplerConfig config;

  double laplace_failure_rate() const noexcept {
    return laplace_calls ? static_cast<double>(laplace_failures) / static_cast<double>(laplace_calls) : 0.0;
  }
};

inline std::size_t group_pair_count(std::size_t q) noexcept { return q < 2 ? 0 : q * (q - 1) / 2; }
/// Index of group pair x < h in row-major upper-triangle order.
std::size_t group_pair_index(std::size_t x, std::size_t h, std::size_t q) noexcept;

/// Initial coupling: epsilon = 1, theta = theta_init, nu = logit(a / (a + b)).
/// Separate engines get epsilon = theta = 0 and nu = logit(separate_prob).
CouplingState initial_coupling(const SamplerConfig& cfg, std::size_t p, std::size_t q);

/// Empty output with metadata and zeroed accumulators for a p-node, q-group run.
ChainOutput start_output(const SamplerConfig& cfg, std::size_t p, std::size_t q);

/// Appends a snapshot and updates post-burn-in accumulators.
void record_iteration(ChainOutput& out, std::size_t t,
                      std::span<const EdgeIndicators> deltas,
                      const CouplingState& coupling,
                      std::span<const CanonicalParams> lambda = {});

}  // namespace multising
