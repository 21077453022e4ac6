#pragma once

// Turns a raw survey-style CSV into grouped binary data: each variable is
// dichotomised by a value set, and a grouping column is cut either at given
// thresholds, at k empirical quantiles, or by its listed levels.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multising/csv.hpp"
#include "multising/io.hpp"

namespace multising {

struct VariableRule {
  std::string column;
  std::string name;                           // output name; column if empty
  std::set<std::string> ones;                 // values coded 1
  std::optional<std::set<std::string>> zeros; // values coded 0; complement if absent
};

struct GroupRule {
  enum class Kind { thresholds, quantiles, levels };
  std::string column;
  Kind kind = Kind::quantiles;
  std::vector<double> thresholds;  // group x holds t_{x-1} < v <= t_x
  std::size_t k = 3;               // number of quantile groups
  std::vector<std::string> levels; // one group per listed value, in order
  std::vector<std::string> labels; // optional group labels
};

struct IngestSpec {
  std::vector<VariableRule> variables;
  GroupRule group;
  std::set<std::string> missing{"", "NA", "NaN", "."};  // dropped rows

  void validate() const;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::vector<std::string> group_labels;
  std::vector<std::size_t> group_sizes;
  std::vector<double> thresholds;  // realised cut points (numeric groupings)
};

IngestSpec ingest_spec_from_json(const Json& j);
IngestSpec read_ingest_spec(const std::string& path);
Json ingest_report_to_json(const IngestReport& report);

struct IngestResult {
  GroupedData data;
  IngestReport report;
};

IngestResult ingest(const CsvTable& table, const IngestSpec& spec);
IngestResult ingest(const std::string& csv_path, const IngestSpec& spec);

}  // namespace multising
