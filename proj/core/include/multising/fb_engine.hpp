#pragma once

// Exact-likelihood sampler: lambda is integrated out through Laplace
// approximated marginal likelihoods and each group's graph is explored by
// single-edge flips.

#include <cstdint>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

#include "multising/chain.hpp"
#include "multising/laplace.hpp"
#include "multising/rng.hpp"

namespace multising {

/// Bounded least-recently-used memo of log marginal likelihoods keyed by the
/// edge-indicator bits.
class MarginalCache {
 public:
  explicit MarginalCache(std::size_t capacity = 200000) : capacity_(capacity) {}

  const LogMarginal* find(const std::string& key);
  void insert(const std::string& key, LogMarginal value);
  std::size_t size() const noexcept { return index_.size(); }
  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }

 private:
  using Entry = std::pair<std::string, LogMarginal>;
  std::size_t capacity_;
  std::list<Entry> order_;
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

/// Per-group data summaries, prior hyperparameters and memo tables.
class FbModel {
 public:
  FbModel(const GroupedData& data, const SamplerConfig& cfg);

  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return counts_.size(); }
  const DyHyper& hyper(std::size_t x) const { return hypers_[x]; }
  const MarginalCounts& counts(std::size_t x) const { return counts_[x]; }

  /// Memoised log marginal likelihood of graph `delta` for group x.
  LogMarginal log_marginal(std::size_t x, const EdgeIndicators& delta);

  std::uint64_t laplace_calls = 0;
  std::uint64_t laplace_failures = 0;

 private:
  std::size_t p_;
  std::vector<MarginalCounts> counts_;
  std::vector<DyHyper> hypers_;
  std::vector<MarginalCache> caches_;
  LaplaceOptions options_;
};

struct FbState {
  std::vector<EdgeIndicators> delta;
  CouplingState coupling;
  std::vector<double> cached_logml;
};

FbState initial_fb_state(FbModel& model, const SamplerConfig& cfg);

/// Proposes flipping one uniformly drawn edge of group x and accepts on the
/// posterior ratio. The proposal is symmetric so no proposal term enters.
MoveResult fb_graph_step(FbState& state, std::size_t x, FbModel& model, Rng& rng);

/// Same move for a fixed edge; used by tests.
MoveResult fb_flip_edge(FbState& state, std::size_t x, std::size_t e,
                        FbModel& model, Rng& rng);

ChainOutput run_fb_chain(const GroupedData& data, const SamplerConfig& cfg, Rng& rng);

}  // namespace multising
