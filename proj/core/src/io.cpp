#include "multising/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "multising/csv.hpp"

namespace multising {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void RunConfig::validate() const {
  sampler.validate();
  if (!(cutoff >= 0.0 && cutoff < 1.0)) throw ConfigError("cutoff must lie in [0, 1)");
  if (!(fdr_bound >= 0.0 && fdr_bound <= 1.0)) throw ConfigError("fdr_bound must lie in [0, 1]");
  if (blocks == 0) throw ConfigError("blocks must be positive");
  if (chains == 0) throw ConfigError("chains must be positive");
}

Json config_to_json(const SamplerConfig& c) {
  Json j;
  j["engine"] = to_string(c.engine);
  j["iterations"] = c.iterations;
  j["burn_in"] = c.burn_in;
  j["thin"] = c.thin;
  j["seed"] = c.seed;
  j["rho"] = c.rho ? Json(*c.rho) : Json(nullptr);
  j["gamma"] = c.gamma ? Json(*c.gamma) : Json(nullptr);
  j["sigma"] = c.sigma;
  j["spike_update"] = to_string(c.spike_update);
  j["tune_sigma"] = c.tune_sigma;
  j["tune_target"] = c.tune_target;
  j["g"] = c.g;
  j["g_per_group"] = c.g_per_group;
  j["laplace_tol"] = c.laplace_tol;
  j["laplace_max_iter"] = c.laplace_max_iter;
  j["cache_capacity"] = c.cache_capacity;
  j["graph_sweeps"] = c.graph_sweeps;
  j["max_laplace_failure_rate"] = c.max_laplace_failure_rate;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["omega"] = c.omega;
  j["a"] = c.a;
  j["b"] = c.b;
  j["theta_proposal"] = {{"alpha", c.theta_prop.alpha_t}, {"beta", c.theta_prop.beta_t}};
  j["nu_proposal"] = {{"a", c.nu_prop.a_t}, {"b", c.nu_prop.b_t}};
  j["random_scan"] = c.random_scan;
  j["theta_init"] = c.theta_init;
  j["separate_prob"] = c.separate_prob ? Json(*c.separate_prob) : Json(nullptr);
  j["keep_samples"] = c.keep_samples;
  j["keep_lambda"] = c.keep_lambda;
  return j;
}

namespace {

template <class T>
T get_as(const Json& j, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (j.is_number_integer() && j.get<long long>() < 0)
        throw ConfigError("'" + key + "' must be non-negative");
      if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be a non-negative integer");
    } else if constexpr (std::is_arithmetic_v<T>) {
      if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) throw ConfigError("'" + key + "' must be a string");
    }
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid value for '" + key + "': " + e.what());
  }
}

template <class T>
std::optional<T> get_optional(const Json& j, const std::string& key) {
  if (j.is_null()) return std::nullopt;
  return get_as<T>(j, key);
}

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
}

}  // namespace

SamplerConfig config_from_json(const Json& j, const SamplerConfig& base) {
  require_object(j, "sampler configuration");
  SamplerConfig c = base;
  for (const auto& [key, v] : j.items()) {
    if (key == "engine") c.engine = engine_from_string(get_as<std::string>(v, key));
    else if (key == "iterations") c.iterations = get_as<std::size_t>(v, key);
    else if (key == "burn_in") c.burn_in = get_as<std::size_t>(v, key);
    else if (key == "thin") c.thin = get_as<std::size_t>(v, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "rho") c.rho = get_optional<double>(v, key);
    else if (key == "gamma") c.gamma = get_optional<double>(v, key);
    else if (key == "sigma") c.sigma = get_as<double>(v, key);
    else if (key == "spike_update") c.spike_update = spike_update_from_string(get_as<std::string>(v, key));
    else if (key == "tune_sigma") c.tune_sigma = get_as<bool>(v, key);
    else if (key == "tune_target") c.tune_target = get_as<double>(v, key);
    else if (key == "g") c.g = get_as<double>(v, key);
    else if (key == "g_per_group") {
      if (!v.is_array()) throw ConfigError("'g_per_group' must be an array of numbers");
      c.g_per_group.clear();
      for (const auto& e : v) c.g_per_group.push_back(get_as<double>(e, key));
    } else if (key == "laplace_tol") c.laplace_tol = get_as<double>(v, key);
    else if (key == "laplace_max_iter") c.laplace_max_iter = static_cast<int>(get_as<std::size_t>(v, key));
    else if (key == "cache_capacity") c.cache_capacity = get_as<std::size_t>(v, key);
    else if (key == "graph_sweeps") c.graph_sweeps = get_as<std::size_t>(v, key);
    else if (key == "max_laplace_failure_rate") c.max_laplace_failure_rate = get_as<double>(v, key);
    else if (key == "alpha") c.alpha = get_as<double>(v, key);
    else if (key == "beta") c.beta = get_as<double>(v, key);
    else if (key == "omega") c.omega = get_as<double>(v, key);
    else if (key == "a") c.a = get_as<double>(v, key);
    else if (key == "b") c.b = get_as<double>(v, key);
    else if (key == "theta_proposal") {
      require_object(v, "'theta_proposal'");
      for (const auto& [k2, v2] : v.items()) {
        if (k2 == "alpha") c.theta_prop.alpha_t = get_as<double>(v2, "theta_proposal.alpha");
        else if (k2 == "beta") c.theta_prop.beta_t = get_as<double>(v2, "theta_proposal.beta");
        else throw ConfigError("unknown key 'theta_proposal." + k2 + "'");
      }
    } else if (key == "nu_proposal") {
      require_object(v, "'nu_proposal'");
      for (const auto& [k2, v2] : v.items()) {
        if (k2 == "a") c.nu_prop.a_t = get_as<double>(v2, "nu_proposal.a");
        else if (k2 == "b") c.nu_prop.b_t = get_as<double>(v2, "nu_proposal.b");
        else throw ConfigError("unknown key 'nu_proposal." + k2 + "'");
      }
    } else if (key == "random_scan") c.random_scan = get_as<bool>(v, key);
    else if (key == "theta_init") c.theta_init = get_as<double>(v, key);
    else if (key == "separate_prob") c.separate_prob = get_optional<double>(v, key);
    else if (key == "keep_samples") c.keep_samples = get_as<bool>(v, key);
    else if (key == "keep_lambda") c.keep_lambda = get_as<bool>(v, key);
    else throw ConfigError("unknown configuration key '" + key + "'");
  }
  return c;
}

Json run_config_to_json(const RunConfig& cfg) {
  Json j;
  j["sampler"] = config_to_json(cfg.sampler);
  j["cutoff"] = cfg.cutoff;
  j["fdr_bound"] = cfg.fdr_bound;
  j["blocks"] = cfg.blocks;
  j["chains"] = cfg.chains;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  require_object(j, "run configuration");
  RunConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "sampler") cfg.sampler = config_from_json(v);
    else if (key == "cutoff") cfg.cutoff = get_as<double>(v, key);
    else if (key == "fdr_bound") cfg.fdr_bound = get_as<double>(v, key);
    else if (key == "blocks") cfg.blocks = get_as<std::size_t>(v, key);
    else if (key == "chains") cfg.chains = get_as<std::size_t>(v, key);
    else throw ConfigError("unknown configuration key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

RunConfig read_run_config(const std::string& path) { return run_config_from_json(read_json_file(path)); }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

GroupedData read_grouped_csv(const std::string& path) {
  const auto table = read_csv_file(path);
  const std::size_t gcol = table.column("group");
  GroupedData data;
  std::vector<std::size_t> vcols;
  for (std::size_t k = 0; k < table.header.size(); ++k)
    if (k != gcol) {
      vcols.push_back(k);
      data.variable_names.push_back(table.header[k]);
    }
  if (vcols.empty()) throw DataError("'" + path + "' has no variable columns");
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::uint8_t>> cells;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto [it, fresh] = index.emplace(row[gcol], labels.size());
    if (fresh) {
      labels.push_back(row[gcol]);
      cells.emplace_back();
    }
    for (auto k : vcols) {
      const auto& v = row[k];
      if (v != "0" && v != "1")
        throw DataError("'" + path + "' row " + std::to_string(i + 2) + ", column '" +
                        table.header[k] + "': expected 0 or 1, got '" + v + "'");
      cells[it->second].push_back(v == "1" ? 1 : 0);
    }
  }
  if (labels.empty()) throw DataError("'" + path + "' has no data rows");
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const std::size_t n = cells[x].size() / vcols.size();
    data.groups.emplace_back(n, vcols.size(), std::move(cells[x]), labels[x]);
  }
  data.validate();
  return data;
}

void write_grouped_csv(const std::string& path, const GroupedData& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  CsvRow header{"group"};
  for (std::size_t r = 0; r < data.p(); ++r)
    header.push_back(r < data.variable_names.size() ? data.variable_names[r] : "v" + std::to_string(r + 1));
  write_csv_row(out, header);
  for (std::size_t x = 0; x < data.q(); ++x) {
    const auto& g = data.groups[x];
    const std::string label = g.label().empty() ? "g" + std::to_string(x) : g.label();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      CsvRow row{label};
      for (std::size_t r = 0; r < g.cols(); ++r) row.push_back(g(i, r) ? "1" : "0");
      write_csv_row(out, row);
    }
  }
}

namespace {

std::string pair_suffix(std::size_t a, std::size_t b) {
  return std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

void write_chain_csv(const std::string& path, const ChainOutput& chain) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  const std::size_t p = chain.p, q = chain.q, edges = num_pairs(p);
  const auto pairs = all_pairs(p);
  CsvRow header{"iter"};
  for (std::size_t x = 0; x < q; ++x)
    for (const auto& pr : pairs) header.push_back("delta_g" + std::to_string(x) + "_" + pair_suffix(pr.r, pr.j));
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t h = x + 1; h < q; ++h) header.push_back("theta_" + pair_suffix(x, h));
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t h = x + 1; h < q; ++h) header.push_back("eps_" + pair_suffix(x, h));
  for (const auto& pr : pairs) header.push_back("nu_" + pair_suffix(pr.r, pr.j));
  const bool lambda = chain.config.keep_lambda && !chain.samples.empty() &&
                      !chain.samples.front().lambda.empty();
  if (lambda)
    for (std::size_t x = 0; x < q; ++x) {
      for (std::size_t r = 0; r < p; ++r) header.push_back("lambda_g" + std::to_string(x) + "_" + pair_suffix(r, r));
      for (const auto& pr : pairs) header.push_back("lambda_g" + std::to_string(x) + "_" + pair_suffix(pr.r, pr.j));
    }
  write_csv_row(out, header);
  for (const auto& s : chain.samples) {
    CsvRow row{std::to_string(s.iteration)};
    for (std::size_t k = 0; k < q * edges; ++k) row.push_back(s.delta[k] ? "1" : "0");
    for (double t : s.theta) row.push_back(format_double(t));
    for (auto e : s.epsilon) row.push_back(e ? "1" : "0");
    for (double v : s.nu) row.push_back(format_double(v));
    if (lambda)
      for (double v : s.lambda) row.push_back(format_double(v));
    write_csv_row(out, row);
  }
}

Json chain_meta_to_json(const ChainOutput& chain) {
  Json j;
  j["version"] = MULTISING_VERSION;
  j["engine"] = to_string(chain.engine);
  j["p"] = chain.p;
  j["q"] = chain.q;
  j["iterations"] = chain.iterations;
  j["burn_in"] = chain.burn_in;
  j["thin"] = chain.thin;
  j["seed"] = chain.seed;
  j["retained"] = chain.retained;
  j["inclusion_counts"] = chain.inclusion_counts;
  j["epsilon_counts"] = chain.epsilon_counts;
  Json acc = Json::object();
  for (const auto& [name, c] : chain.acceptance)
    acc[name] = {{"attempted", c.attempted}, {"accepted", c.accepted}, {"rate", c.rate()}};
  j["acceptance"] = acc;
  j["laplace_calls"] = chain.laplace_calls;
  j["laplace_failures"] = chain.laplace_failures;
  j["final_sigma"] = chain.final_sigma;
  j["wall_seconds"] = chain.wall_seconds;
  j["config"] = config_to_json(chain.config);
  return j;
}

ChainOutput read_chain(const std::string& csv_path, const std::string& meta_path) {
  const Json meta = read_json_file(meta_path);
  ChainOutput c;
  try {
    c.config = config_from_json(meta.at("config"));
    c.engine = engine_from_string(meta.at("engine").get<std::string>());
    c.p = meta.at("p").get<std::size_t>();
    c.q = meta.at("q").get<std::size_t>();
    c.iterations = meta.at("iterations").get<std::size_t>();
    c.burn_in = meta.at("burn_in").get<std::size_t>();
    c.thin = meta.at("thin").get<std::size_t>();
    c.seed = meta.at("seed").get<std::uint64_t>();
    c.retained = meta.at("retained").get<std::size_t>();
    c.inclusion_counts = meta.at("inclusion_counts").get<std::vector<std::vector<std::uint64_t>>>();
    c.epsilon_counts = meta.at("epsilon_counts").get<std::vector<std::uint64_t>>();
    for (const auto& [name, v] : meta.at("acceptance").items())
      c.acceptance[name] = {v.at("attempted").get<std::uint64_t>(), v.at("accepted").get<std::uint64_t>()};
    c.laplace_calls = meta.value("laplace_calls", std::uint64_t{0});
    c.laplace_failures = meta.value("laplace_failures", std::uint64_t{0});
    c.final_sigma = meta.value("final_sigma", 0.0);
    c.wall_seconds = meta.value("wall_seconds", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed chain metadata '" + meta_path + "': " + e.what());
  }
  if (c.inclusion_counts.size() != c.q) throw DataError("chain metadata: inclusion counts do not match q");

  const auto table = read_csv_file(csv_path);
  const std::size_t edges = num_pairs(c.p), gp = group_pair_count(c.q);
  const std::size_t base = 1 + c.q * edges + 2 * gp + edges;
  if (table.header.size() < base)
    throw DataError("chain samples '" + csv_path + "' do not match the metadata dimensions");
  auto to_double = [&](const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc()) throw DataError("chain samples: bad number '" + s + "'");
    return v;
  };
  for (const auto& row : table.rows) {
    ChainSample s;
    s.iteration = static_cast<std::size_t>(to_double(row[0]));
    std::size_t k = 1;
    for (std::size_t i = 0; i < c.q * edges; ++i) s.delta.push_back(row[k++] == "1" ? 1 : 0);
    for (std::size_t i = 0; i < gp; ++i) s.theta.push_back(to_double(row[k++]));
    for (std::size_t i = 0; i < gp; ++i) s.epsilon.push_back(row[k++] == "1" ? 1 : 0);
    for (std::size_t i = 0; i < edges; ++i) s.nu.push_back(to_double(row[k++]));
    for (; k < row.size(); ++k) s.lambda.push_back(to_double(row[k]));
    c.samples.push_back(std::move(s));
  }
  return c;
}

void write_ppi_csv(const std::string& path, const PpiTable& table,
                   const std::vector<std::string>& group_labels) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_csv_row(out, {"group", "r", "j", "ppi"});
  const auto pairs = all_pairs(table.p);
  char buf[32];
  for (std::size_t x = 0; x < table.q(); ++x) {
    const std::string label = x < group_labels.size() ? group_labels[x] : "g" + std::to_string(x);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      std::snprintf(buf, sizeof buf, "%.6f", table.values[x][e]);
      write_csv_row(out, {label, std::to_string(pairs[e].r), std::to_string(pairs[e].j), buf});
    }
  }
}

Json graphs_to_json(const std::vector<EdgeIndicators>& graphs) {
  Json out = Json::array();
  for (const auto& g : graphs) {
    Json edges = Json::array();
    for (std::size_t e = 0; e < g.size(); ++e)
      if (g.bits[e]) {
        const auto pr = pair_at(e);
        edges.push_back({pr.r, pr.j});
      }
    out.push_back(edges);
  }
  return out;
}

Json summary_json(const ChainOutput& chain, const SummaryOptions& o) {
  Json j;
  Json meta = chain_meta_to_json(chain);
  meta.erase("inclusion_counts");
  meta.erase("epsilon_counts");
  meta["group_labels"] = o.group_labels;
  meta["variable_names"] = o.variable_names;
  meta["initial_state"] = {{"delta", 0}, {"epsilon", is_coupled(chain.engine) ? 1 : 0},
                           {"theta", is_coupled(chain.engine) ? chain.config.theta_init : 0.0}};
  j["meta"] = meta;
  if (chain.iterations == 0 || chain.burn_in >= chain.iterations) {
    j["ppi"] = nullptr;
    return j;
  }
  const auto table = ppi(chain);
  Json edges = Json::array();
  for (const auto& pr : all_pairs(chain.p)) edges.push_back({pr.r, pr.j});
  j["edges"] = edges;
  j["ppi"] = table.values;
  const auto selected = select_graphs(table, o.cutoff);
  j["selected"] = {{"cutoff", o.cutoff}, {"graphs", graphs_to_json(selected.graphs)}};
  j["theta_ppi"] = theta_ppi(chain);
  j["sec"] = sec_matrix(selected);
  const auto fdr = expected_fdr(table, o.fdr_bound);
  j["expected_fdr"] = {{"bound", o.fdr_bound},
                       {"value", fdr ? Json(*fdr) : Json(nullptr)},
                       {"no_discoveries", !fdr.has_value()}};
  std::size_t kept = 0;
  for (const auto& s : chain.samples) kept += s.iteration > chain.burn_in;
  if (kept >= o.blocks) {
    const auto qg = quantile_graphs(chain, std::nullopt,
                                    {SummaryLevel::quantile(0.25), SummaryLevel::mean(),
                                     SummaryLevel::quantile(0.75)},
                                    o.cutoff, o.blocks);
    j["quantile_graphs"] = {{"blocks", o.blocks},
                            {"q25", graphs_to_json(qg[0].graphs)},
                            {"mean", graphs_to_json(qg[1].graphs)},
                            {"q75", graphs_to_json(qg[2].graphs)}};
  } else {
    j["quantile_graphs"] = nullptr;
  }
  return j;
}

void write_edge_list(const std::string& path, const EdgeIndicators& graph,
                     const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  const bool named = names.size() == graph.p;
  write_csv_row(out, named ? CsvRow{"r", "j", "name_r", "name_j"} : CsvRow{"r", "j"});
  for (std::size_t e = 0; e < graph.size(); ++e)
    if (graph.bits[e]) {
      const auto pr = pair_at(e);
      CsvRow row{std::to_string(pr.r), std::to_string(pr.j)};
      if (named) {
        row.push_back(names[pr.r]);
        row.push_back(names[pr.j]);
      }
      write_csv_row(out, row);
    }
}

EdgeIndicators read_edge_list(const std::string& path, std::size_t p) {
  const auto table = read_csv_file(path);
  const auto rc = table.column("r"), jc = table.column("j");
  EdgeIndicators g(p);
  for (const auto& row : table.rows) {
    std::size_t r = 0, j = 0;
    auto ok = [](const std::string& s, std::size_t& v) {
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      return res.ec == std::errc() && res.ptr == s.data() + s.size();
    };
    if (!ok(row[rc], r) || !ok(row[jc], j) || r == j || r >= p || j >= p)
      throw DataError("edge list '" + path + "': invalid edge (" + row[rc] + ", " + row[jc] + ")");
    g.set(r, j, true);
  }
  return g;
}

StudyConfig study_config_from_json(const Json& j) {
  require_object(j, "study configuration");
  StudyConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "scenarios") {
      if (!v.is_array()) throw ConfigError("'scenarios' must be an array");
      c.scenarios.clear();
      for (const auto& s : v) c.scenarios.push_back(scenario_from_string(get_as<std::string>(s, key)));
    } else if (key == "methods") {
      if (!v.is_array()) throw ConfigError("'methods' must be an array");
      c.methods.clear();
      for (const auto& m : v) c.methods.push_back(engine_from_string(get_as<std::string>(m, key)));
    } else if (key == "replicates") c.replicates = get_as<std::size_t>(v, key);
    else if (key == "p") c.p = get_as<std::size_t>(v, key);
    else if (key == "q") c.q = get_as<std::size_t>(v, key);
    else if (key == "n_per_group") c.n_per_group = get_as<std::size_t>(v, key);
    else if (key == "gibbs_burn_in") c.gibbs_burn_in = get_as<std::size_t>(v, key);
    else if (key == "gibbs_thin") c.gibbs_thin = get_as<std::size_t>(v, key);
    else if (key == "cutoff") c.cutoff = get_as<double>(v, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "threads") c.threads = get_as<std::size_t>(v, key);
    else if (key == "m") c.scenario.m = get_as<std::size_t>(v, key);
    else if (key == "main_effect") c.scenario.main_effect = get_as<double>(v, key);
    else if (key == "interaction") c.scenario.interaction = get_as<double>(v, key);
    else if (key == "sampler") c.sampler = config_from_json(v);
    else throw ConfigError("unknown study key '" + key + "'");
  }
  c.validate();
  return c;
}

Json study_config_to_json(const StudyConfig& c) {
  Json j;
  Json sc = Json::array(), ms = Json::array();
  for (auto s : c.scenarios) sc.push_back(to_string(s));
  for (auto m : c.methods) ms.push_back(to_string(m));
  j["scenarios"] = sc;
  j["methods"] = ms;
  j["replicates"] = c.replicates;
  j["p"] = c.p;
  j["q"] = c.q;
  j["n_per_group"] = c.n_per_group;
  j["gibbs_burn_in"] = c.gibbs_burn_in;
  j["gibbs_thin"] = c.gibbs_thin;
  j["cutoff"] = c.cutoff;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["m"] = c.scenario.m;
  j["main_effect"] = c.scenario.main_effect;
  j["interaction"] = c.scenario.interaction;
  j["sampler"] = config_to_json(c.sampler);
  return j;
}

Json study_report_to_json(const StudyReport& r) {
  Json j;
  j["version"] = MULTISING_VERSION;
  j["config"] = study_config_to_json(r.config);
  j["replicates"] = r.replicates;
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json runs = Json::array();
    for (const auto& run : c.runs)
      runs.push_back({{"replicate", run.replicate}, {"mcc", run.mcc}, {"f1", run.f1}, {"seconds", run.seconds}});
    cells.push_back({{"scenario", to_string(c.scenario)},
                     {"method", to_string(c.method)},
                     {"mean_mcc", c.mean_mcc},
                     {"se_mcc", c.se_mcc},
                     {"mean_f1", c.mean_f1},
                     {"se_f1", c.se_f1},
                     {"mean_seconds", c.mean_seconds},
                     {"runs", runs}});
  }
  j["cells"] = cells;
  return j;
}

void write_study_csv(const std::string& path, const StudyReport& r) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_csv_row(out, {"scenario", "method", "replicates", "mean_mcc", "se_mcc", "mean_f1", "se_f1", "mean_seconds"});
  for (const auto& c : r.cells)
    write_csv_row(out, {to_string(c.scenario), to_string(c.method), std::to_string(c.runs.size()),
                        format_double(c.mean_mcc), format_double(c.se_mcc), format_double(c.mean_f1),
                        format_double(c.se_f1), format_double(c.mean_seconds)});
}

}  // namespace multising
