#include "multising/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "multising/coupling.hpp"
#include "multising/numeric.hpp"

namespace multising {

void IngestSpec::validate() const {
  if (variables.empty()) throw ConfigError("ingest spec lists no variables");
  if (group.column.empty()) throw ConfigError("ingest spec has no grouping column");
  for (const auto& v : variables) {
    if (v.column.empty()) throw ConfigError("ingest spec: variable without a column");
    if (v.ones.empty()) throw ConfigError("ingest spec: variable '" + v.column + "' has no values coded 1");
    if (v.zeros)
      for (const auto& z : *v.zeros)
        if (v.ones.count(z))
          throw ConfigError("ingest spec: value '" + z + "' of '" + v.column + "' coded both 0 and 1");
  }
  switch (group.kind) {
    case GroupRule::Kind::thresholds:
      if (group.thresholds.empty()) throw ConfigError("ingest spec: no group thresholds");
      for (std::size_t i = 1; i < group.thresholds.size(); ++i)
        if (!(group.thresholds[i] > group.thresholds[i - 1]))
          throw ConfigError("ingest spec: group thresholds must be strictly increasing");
      break;
    case GroupRule::Kind::quantiles:
      if (group.k < 2) throw ConfigError("ingest spec: quantile grouping needs k >= 2");
      break;
    case GroupRule::Kind::levels:
      if (group.levels.empty()) throw ConfigError("ingest spec: no group levels");
      break;
  }
}

namespace {

std::set<std::string> string_set(const Json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("ingest spec: '" + key + "' must be an array");
  std::set<std::string> out;
  for (const auto& v : j) {
    if (v.is_string()) out.insert(v.get<std::string>());
    else if (v.is_number_integer()) out.insert(std::to_string(v.get<long long>()));
    else throw ConfigError("ingest spec: '" + key + "' entries must be strings or integers");
  }
  return out;
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

IngestSpec ingest_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("ingest spec must be a JSON object");
  IngestSpec spec;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "variables") {
        for (const auto& var : v) {
          VariableRule rule;
          for (const auto& [k2, v2] : var.items()) {
            if (k2 == "column") rule.column = v2.get<std::string>();
            else if (k2 == "name") rule.name = v2.get<std::string>();
            else if (k2 == "ones") rule.ones = string_set(v2, "ones");
            else if (k2 == "zeros") rule.zeros = string_set(v2, "zeros");
            else throw ConfigError("ingest spec: unknown variable key '" + k2 + "'");
          }
          spec.variables.push_back(std::move(rule));
        }
      } else if (key == "group") {
        auto& g = spec.group;
        bool kind_set = false;
        for (const auto& [k2, v2] : v.items()) {
          if (k2 == "column") g.column = v2.get<std::string>();
          else if (k2 == "thresholds") {
            g.kind = GroupRule::Kind::thresholds;
            g.thresholds = v2.get<std::vector<double>>();
            kind_set = true;
          } else if (k2 == "quantiles") {
            g.kind = GroupRule::Kind::quantiles;
            g.k = v2.get<std::size_t>();
            kind_set = true;
          } else if (k2 == "levels") {
            g.kind = GroupRule::Kind::levels;
            const auto s = v2;
            g.levels.clear();
            for (const auto& lv : s)
              g.levels.push_back(lv.is_string() ? lv.get<std::string>()
                                                : std::to_string(lv.get<long long>()));
            kind_set = true;
          } else if (k2 == "labels") g.labels = v2.get<std::vector<std::string>>();
          else throw ConfigError("ingest spec: unknown group key '" + k2 + "'");
        }
        if (!kind_set) throw ConfigError("ingest spec: group needs thresholds, quantiles or levels");
      } else if (key == "missing") {
        spec.missing = string_set(v, "missing");
      } else {
        throw ConfigError("ingest spec: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("ingest spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

IngestSpec read_ingest_spec(const std::string& path) {
  return ingest_spec_from_json(read_json_file(path));
}

Json ingest_report_to_json(const IngestReport& r) {
  Json j;
  j["rows_read"] = r.rows_read;
  j["rows_dropped"] = r.rows_dropped;
  j["group_labels"] = r.group_labels;
  j["group_sizes"] = r.group_sizes;
  j["thresholds"] = r.thresholds;
  return j;
}

IngestResult ingest(const CsvTable& table, const IngestSpec& spec) {
  spec.validate();
  const std::size_t gcol = table.column(spec.group.column);
  std::vector<std::size_t> vcols;
  for (const auto& v : spec.variables) vcols.push_back(table.column(v.column));

  IngestReport report;
  report.rows_read = table.rows.size();

  // Pass 1: code variables and drop rows with missing values.
  struct Coded {
    std::vector<std::uint8_t> z;
    std::string group_value;
    double group_number = 0.0;
  };
  const bool numeric = spec.group.kind != GroupRule::Kind::levels;
  std::vector<Coded> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t line = i + 2;
    Coded c;
    bool drop = spec.missing.count(row[gcol]) > 0;
    for (std::size_t k = 0; k < vcols.size() && !drop; ++k) {
      const auto& value = row[vcols[k]];
      const auto& rule = spec.variables[k];
      if (spec.missing.count(value)) {
        drop = true;
      } else if (rule.ones.count(value)) {
        c.z.push_back(1);
      } else if (!rule.zeros || rule.zeros->count(value)) {
        c.z.push_back(0);
      } else {
        throw DataError("line " + std::to_string(line) + ": value '" + value + "' of column '" +
                        rule.column + "' is not mapped to 0 or 1");
      }
    }
    if (drop) {
      ++report.rows_dropped;
      continue;
    }
    c.group_value = row[gcol];
    if (numeric) {
      const auto v = parse_number(row[gcol]);
      if (!v)
        throw DataError("line " + std::to_string(line) + ": grouping value '" + row[gcol] +
                        "' is not numeric");
      c.group_number = *v;
    }
    rows.push_back(std::move(c));
  }
  if (rows.empty()) throw DataError("no rows left after dropping missing values");

  // Pass 2: assign groups.
  std::size_t q = 0;
  std::vector<double> cuts;
  std::map<std::string, std::size_t> level_index;
  switch (spec.group.kind) {
    case GroupRule::Kind::thresholds:
      cuts = spec.group.thresholds;
      q = cuts.size() + 1;
      break;
    case GroupRule::Kind::quantiles: {
      std::vector<double> values;
      for (const auto& r : rows) values.push_back(r.group_number);
      std::sort(values.begin(), values.end());
      for (std::size_t i = 1; i < spec.group.k; ++i)
        cuts.push_back(quantile_type7(values, static_cast<double>(i) / static_cast<double>(spec.group.k)));
      for (std::size_t i = 1; i < cuts.size(); ++i)
        if (!(cuts[i] > cuts[i - 1]))
          throw DataError("quantile thresholds of '" + spec.group.column +
                          "' are not strictly increasing (too many ties for k groups)");
      q = spec.group.k;
      break;
    }
    case GroupRule::Kind::levels:
      for (std::size_t i = 0; i < spec.group.levels.size(); ++i)
        level_index[spec.group.levels[i]] = i;
      q = spec.group.levels.size();
      break;
  }
  report.thresholds = cuts;
  if (q > kMaxGroups)
    throw ConfigError("at most " + std::to_string(kMaxGroups) + " groups are supported");

  std::vector<std::vector<std::uint8_t>> cells(q);
  for (const auto& r : rows) {
    std::size_t x = 0;
    if (numeric) {
      // Ties go to the lower group.
      x = static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), r.group_number) -
                                   cuts.begin());
    } else {
      auto it = level_index.find(r.group_value);
      if (it == level_index.end())
        throw DataError("grouping value '" + r.group_value + "' is not among the listed levels");
      x = it->second;
    }
    cells[x].insert(cells[x].end(), r.z.begin(), r.z.end());
  }

  IngestResult result;
  const std::size_t p = vcols.size();
  for (const auto& v : spec.variables) result.data.variable_names.push_back(v.name.empty() ? v.column : v.name);
  for (std::size_t x = 0; x < q; ++x) {
    std::string label;
    if (x < spec.group.labels.size()) label = spec.group.labels[x];
    else if (spec.group.kind == GroupRule::Kind::levels) label = spec.group.levels[x];
    else label = "g" + std::to_string(x);
    const std::size_t n = cells[x].size() / p;
    if (n == 0) throw DataError("group '" + label + "' is empty after filtering");
    report.group_labels.push_back(label);
    report.group_sizes.push_back(n);
    result.data.groups.emplace_back(n, p, std::move(cells[x]), label);
  }
  result.data.validate();
  result.report = std::move(report);
  return result;
}

IngestResult ingest(const std::string& csv_path, const IngestSpec& spec) {
  return ingest(read_csv_file(csv_path), spec);
}

}  // namespace multising
