#pragma once

// File formats: grouped binary data (CSV), run configuration (JSON), chain
// samples (CSV) with their metadata (JSON), summaries (JSON), PPI tables
// and edge lists (CSV).

#include <string>
#include <vector>

#include "json.hpp"
#include "multising/chain.hpp"
#include "multising/graphsel.hpp"
#include "multising/simlab.hpp"

namespace multising {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Options of a `fit` run beyond the sampler itself.
struct RunConfig {
  SamplerConfig sampler;
  double cutoff = 0.5;
  double fdr_bound = 0.5;
  std::size_t blocks = 20;
  std::size_t chains = 1;

  void validate() const;
};

Json config_to_json(const SamplerConfig& cfg);
/// Starts from `base`; unknown keys and ill-typed values raise ConfigError.
SamplerConfig config_from_json(const Json& j, const SamplerConfig& base = {});
Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);
RunConfig read_run_config(const std::string& path);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Columns: group, then one 0/1 column per variable. Groups appear in
/// first-appearance order.
GroupedData read_grouped_csv(const std::string& path);
void write_grouped_csv(const std::string& path, const GroupedData& data);

/// One row per stored sample: iter, delta_g<x>_<r>_<j>, theta_<x>_<h>,
/// eps_<x>_<h>, nu_<r>_<j> and, when kept, lambda_g<x>_<r>_<j>.
void write_chain_csv(const std::string& path, const ChainOutput& chain);
/// Run metadata, acceptance counters and post-burn-in accumulators.
Json chain_meta_to_json(const ChainOutput& chain);
ChainOutput read_chain(const std::string& csv_path, const std::string& meta_path);

/// Columns group, r, j, ppi; fixed formatting so reruns are byte-identical.
void write_ppi_csv(const std::string& path, const PpiTable& table,
                   const std::vector<std::string>& group_labels);

struct SummaryOptions {
  double cutoff = 0.5;
  double fdr_bound = 0.5;
  std::size_t blocks = 20;
  std::vector<std::string> group_labels;
  std::vector<std::string> variable_names;
};

Json summary_json(const ChainOutput& chain, const SummaryOptions& options);
Json graphs_to_json(const std::vector<EdgeIndicators>& graphs);

/// Edge list with columns r, j (0-based canonical labels, r > j) and
/// optional variable names.
void write_edge_list(const std::string& path, const EdgeIndicators& graph,
                     const std::vector<std::string>& names = {});
EdgeIndicators read_edge_list(const std::string& path, std::size_t p);

/// Study settings: scenarios, methods, replicates, sizes and a "sampler"
/// object in the config_from_json format.
StudyConfig study_config_from_json(const Json& j);
Json study_config_to_json(const StudyConfig& cfg);
Json study_report_to_json(const StudyReport& report);
/// One row per scenario and method: mean and SE of MCC and F1, mean seconds.
void write_study_csv(const std::string& path, const StudyReport& report);

}  // namespace multising
