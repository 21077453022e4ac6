#pragma once

// Simulation scenarios with known graphs and the replicated study driver.

#include <string>
#include <vector>

#include "multising/chain.hpp"
#include "multising/rng.hpp"

namespace multising {

/// Preferential attachment: node t joins with m edges to existing nodes
/// drawn with probability proportional to degree + 1. Labels are randomly
/// permuted afterwards so node 0 is not always the oldest hub.
EdgeIndicators barabasi_albert(std::size_t p, std::size_t m, Rng& rng, bool permute = true);

/// A: all graphs identical. B: pairwise different. C: groups (0,1) and (2,3)
/// share graphs. D: groups (0,1,2) share one graph and group 3 differs.
enum class ScenarioKind { A, B, C, D };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& name);

struct Scenario {
  ScenarioKind kind = ScenarioKind::A;
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<EdgeIndicators> graphs;
  std::vector<CanonicalParams> params;
  std::size_t n_per_group = 100;
  std::uint64_t seed = 0;
};

struct ScenarioOptions {
  std::size_t m = 1;
  double main_effect = -1.0;
  double interaction = 1.5;
  std::size_t max_tries = 1000;
};

Scenario build_scenario(ScenarioKind kind, std::size_t p, std::size_t q, Rng& rng,
                        const ScenarioOptions& options = {});

std::vector<CanonicalParams> graphs_to_params(const std::vector<EdgeIndicators>& graphs,
                                              double main_effect = -1.0,
                                              double interaction = 1.5);

/// Gibbs-samples n_x rows per group. Group x uses seeds[x].
GroupedData simulate_dataset(const Scenario& scenario, std::size_t n_x, std::size_t burn_in,
                             std::size_t thin, const std::vector<std::uint64_t>& seeds);
/// Per-group seeds derived from `seed`.
GroupedData simulate_dataset(const Scenario& scenario, std::size_t n_x, std::size_t burn_in,
                             std::size_t thin, std::uint64_t seed);
GroupedData simulate_dataset(const Scenario& scenario, std::size_t n_x, std::size_t burn_in,
                             std::size_t thin, Rng& rng);

struct StudyConfig {
  std::vector<ScenarioKind> scenarios{ScenarioKind::A};
  std::vector<Engine> methods{Engine::fb, Engine::ab};
  std::size_t replicates = 3;
  std::size_t p = 10;
  std::size_t q = 4;
  std::size_t n_per_group = 100;
  std::size_t gibbs_burn_in = 1000;
  std::size_t gibbs_thin = 10;
  double cutoff = 0.5;
  std::uint64_t seed = 1;
  ScenarioOptions scenario;
  SamplerConfig sampler;  // engine and seed are overridden per run
  std::size_t threads = 1;

  void validate() const;
};

struct ReplicateResult {
  std::size_t replicate = 0;
  double mcc = 0.0;
  double f1 = 0.0;
  double seconds = 0.0;
  std::vector<ChainOutput> chain;  // kept only when requested
};

struct StudyCell {
  ScenarioKind scenario = ScenarioKind::A;
  Engine method = Engine::fb;
  std::vector<ReplicateResult> runs;
  double mean_mcc = 0.0;
  double se_mcc = 0.0;
  double mean_f1 = 0.0;
  double se_f1 = 0.0;
  double mean_seconds = 0.0;
};

struct StudyReport {
  std::vector<StudyCell> cells;
  std::size_t replicates = 0;
  StudyConfig config;

  const StudyCell* find(ScenarioKind s, Engine m) const;
};

/// Seeds used by replicate r of a study: data, then one per method.
std::uint64_t replicate_data_seed(std::uint64_t master, ScenarioKind s, std::size_t r);
std::uint64_t replicate_chain_seed(std::uint64_t master, ScenarioKind s, std::size_t r,
                                   Engine m);

/// Mean and standard error (sd / sqrt(n)) of a sample; se = 0 when n < 2.
std::pair<double, double> mean_se(const std::vector<double>& xs);

StudyReport replicate_study(const StudyConfig& config, bool keep_chains = false);

}  // namespace multising
