#pragma once

// Graph export: one file per group plus a combined file in which edges
// present in every group are flagged as shared.

#include <string>
#include <vector>

#include "multising/types.hpp"

namespace multising {

enum class ExportFormat { edge_list, dot, graphml };

ExportFormat export_format_from_string(const std::string& name);
std::string file_extension(ExportFormat f);

std::string to_dot(const EdgeIndicators& graph, const std::string& name,
                   const std::vector<std::string>& node_names = {});
/// Union of all groups; shared edges carry shared=true, others list their groups.
std::string combined_dot(const std::vector<EdgeIndicators>& graphs,
                         const std::vector<std::string>& group_labels,
                         const std::vector<std::string>& node_names = {});
std::string to_graphml(const EdgeIndicators& graph, const std::string& name,
                       const std::vector<std::string>& node_names = {});
std::string combined_graphml(const std::vector<EdgeIndicators>& graphs,
                             const std::vector<std::string>& group_labels,
                             const std::vector<std::string>& node_names = {});

/// Writes <dir>/<prefix>_<label>.<ext> for each group and
/// <dir>/<prefix>_combined.<ext>; returns the paths written.
std::vector<std::string> export_graphs(const std::vector<EdgeIndicators>& graphs,
                                       ExportFormat format, const std::string& dir,
                                       const std::string& prefix,
                                       const std::vector<std::string>& group_labels = {},
                                       const std::vector<std::string>& node_names = {});

}  // namespace multising
