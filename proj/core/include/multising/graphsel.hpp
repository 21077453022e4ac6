#pragma once

// Posterior summaries of a chain: inclusion probabilities, point-estimate
// graphs, expected FDR, shared edge counts, uncertainty graphs, and scores
// against a known truth.

#include <optional>
#include <vector>

#include "multising/chain.hpp"

namespace multising {

struct PpiTable {
  std::size_t p = 0;
  std::vector<std::vector<double>> values;  // [group][edge]
  std::size_t burn_in = 0;
  std::size_t iterations = 0;

  std::size_t q() const noexcept { return values.size(); }
  double at(std::size_t x, std::size_t r, std::size_t j) const {
    return values[x][pair_index(r, j)];
  }
};

/// Mean of delta over iterations t > burn_in. Uses the chain's running
/// counts when burn_in matches the chain's own, retained samples otherwise.
PpiTable ppi(const ChainOutput& chain, std::optional<std::size_t> burn_in = std::nullopt);

struct SelectedGraphs {
  double cutoff = 0.5;
  std::vector<EdgeIndicators> graphs;
};

/// Edges with PPI strictly above the cutoff.
SelectedGraphs select_graphs(const PpiTable& table, double cutoff = 0.5);

/// Mean PPI over all group-edge entries with PPI <= bound. Empty when no
/// entry qualifies ("no discoveries").
std::optional<double> expected_fdr(const PpiTable& table, double bound = 0.5);

/// Diagonal: edge counts; off-diagonal: shared edges.
std::vector<std::vector<long>> sec_matrix(const std::vector<EdgeIndicators>& graphs);
inline std::vector<std::vector<long>> sec_matrix(const SelectedGraphs& s) {
  return sec_matrix(s.graphs);
}

/// q x q posterior inclusion probabilities of epsilon; diagonal is 1.
std::vector<std::vector<double>> theta_ppi(const ChainOutput& chain,
                                           std::optional<std::size_t> burn_in = std::nullopt);

struct SummaryLevel {
  bool is_mean = false;
  double prob = 0.5;  // used when !is_mean

  static SummaryLevel mean() { return {true, 0.0}; }
  static SummaryLevel quantile(double q) { return {false, q}; }
};

/// Per-edge block inclusion frequencies: retained samples (t > burn_in)
/// split into `blocks` contiguous blocks. Returns [group][edge][block].
std::vector<std::vector<std::vector<double>>> block_frequencies(
    const ChainOutput& chain, std::size_t burn_in, std::size_t blocks = 20);

/// Thresholds the requested quantile (type 7) or mean of the block
/// frequencies at `cutoff`, one SelectedGraphs per level.
std::vector<SelectedGraphs> quantile_graphs(
    const ChainOutput& chain, std::optional<std::size_t> burn_in = std::nullopt,
    const std::vector<SummaryLevel>& levels = {SummaryLevel::quantile(0.25),
                                               SummaryLevel::mean(),
                                               SummaryLevel::quantile(0.75)},
    double cutoff = 0.5, std::size_t blocks = 20);

struct Confusion {
  long tp = 0;
  long tn = 0;
  long fp = 0;
  long fn = 0;
};

Confusion confusion(const EdgeIndicators& truth, const EdgeIndicators& estimate);
/// Pooled over groups.
Confusion confusion(const std::vector<EdgeIndicators>& truth,
                    const std::vector<EdgeIndicators>& estimate);

/// Matthews correlation; 0 when the denominator vanishes.
double mcc(const Confusion& c);
/// Harmonic mean of precision and recall; 0 when either is zero or undefined.
double f1(const Confusion& c);

inline double mcc(const std::vector<EdgeIndicators>& truth, const SelectedGraphs& est) {
  return mcc(confusion(truth, est.graphs));
}
inline double f1(const std::vector<EdgeIndicators>& truth, const SelectedGraphs& est) {
  return f1(confusion(truth, est.graphs));
}

/// Pearson correlation of the flattened tables; empty when either is constant.
std::optional<double> chain_correlation(const PpiTable& a, const PpiTable& b);

}  // namespace multising
