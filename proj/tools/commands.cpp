#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "multising/csv.hpp"
#include "multising/export.hpp"
#include "multising/graphsel.hpp"
#include "multising/ingest.hpp"
#include "multising/io.hpp"
#include "multising/sampler.hpp"
#include "multising/simlab.hpp"

namespace fs = std::filesystem;

namespace multising::cli {

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::vector<std::string> group_labels(const GroupedData& d) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < d.q(); ++x)
    out.push_back(d.groups[x].label().empty() ? "g" + std::to_string(x) : d.groups[x].label());
  return out;
}

std::vector<std::string> labels_from(const Json& meta, std::size_t q) {
  std::vector<std::string> out;
  if (meta.contains("group_labels") && meta["group_labels"].is_array())
    out = meta["group_labels"].get<std::vector<std::string>>();
  for (std::size_t x = out.size(); x < q; ++x) out.push_back("g" + std::to_string(x));
  return out;
}

std::vector<EdgeIndicators> graphs_from_json(const Json& j, std::size_t p) {
  std::vector<EdgeIndicators> out;
  try {
    for (const auto& edges : j) {
      EdgeIndicators g(p);
      for (const auto& e : edges) {
        const auto r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
        if (r >= p || c >= p || r == c) throw DataError("edge (" + std::to_string(r) + ", " + std::to_string(c) + ") out of range");
        g.set(r, c, true);
      }
      out.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed graph list: ") + e.what());
  }
  return out;
}

struct LoadedChain {
  ChainOutput chain;
  Json meta;
};

LoadedChain load_chain(const std::string& dir) {
  for (const char* f : {"chain.csv", "chain.json"})
    if (!fs::exists(fs::path(dir) / f)) throw DataError("'" + dir + "' has no " + f + " (expected a fit output directory)");
  LoadedChain c;
  c.chain = read_chain(join(dir, "chain.csv"), join(dir, "chain.json"));
  c.meta = read_json_file(join(dir, "chain.json"));
  return c;
}

void write_fit_outputs(const std::string& dir, const ChainOutput& chain, const GroupedData& data,
                       const RunConfig& rc, const std::string& data_path) {
  ensure_dir(dir);
  write_chain_csv(join(dir, "chain.csv"), chain);
  Json meta = chain_meta_to_json(chain);
  meta["data"] = data_path;
  meta["group_labels"] = group_labels(data);
  meta["variable_names"] = data.variable_names;
  meta["run"] = run_config_to_json(rc);
  write_json_file(join(dir, "chain.json"), meta);
  SummaryOptions o;
  o.cutoff = rc.cutoff;
  o.fdr_bound = rc.fdr_bound;
  o.blocks = rc.blocks;
  o.group_labels = group_labels(data);
  o.variable_names = data.variable_names;
  write_json_file(join(dir, "summary.json"), summary_json(chain, o));
  if (chain.iterations > chain.burn_in) write_ppi_csv(join(dir, "ppi.csv"), ppi(chain), o.group_labels);
}

void print_chain(const ChainOutput& chain, const std::string& tag, double cutoff) {
  std::printf("%sengine %s, %zu iterations (burn-in %zu), %.1f s\n", tag.c_str(), to_string(chain.engine).c_str(),
              chain.iterations, chain.burn_in, chain.wall_seconds);
  for (const auto& [name, c] : chain.acceptance)
    std::printf("%s  acceptance %-14s %.3f (%llu moves)\n", tag.c_str(), name.c_str(), c.rate(),
                static_cast<unsigned long long>(c.attempted));
  if (chain.laplace_calls)
    std::printf("%s  laplace failures %llu of %llu\n", tag.c_str(),
                static_cast<unsigned long long>(chain.laplace_failures),
                static_cast<unsigned long long>(chain.laplace_calls));
  if (chain.iterations > chain.burn_in) {
    const auto sel = select_graphs(ppi(chain), cutoff);
    std::printf("%s  selected edges:", tag.c_str());
    for (const auto& g : sel.graphs) std::printf(" %zu", g.edge_count());
    std::printf("\n");
  }
}

void apply_overrides(SamplerConfig& s, const std::optional<std::string>& engine,
                     const std::optional<std::size_t>& iterations, const std::optional<std::size_t>& burn_in) {
  if (engine) s.engine = engine_from_string(*engine);
  if (iterations) s.iterations = *iterations;
  if (burn_in) s.burn_in = *burn_in;
}

Json correlation_matrix(const std::vector<PpiTable>& tables) {
  Json m = Json::array();
  for (const auto& a : tables) {
    Json row = Json::array();
    for (const auto& b : tables) {
      const auto r = chain_correlation(a, b);
      row.push_back(r ? Json(*r) : Json(nullptr));
    }
    m.push_back(row);
  }
  return m;
}

}  // namespace

int run_simulate(const SimulateArgs& a) {
  Rng rng(mix_seed(a.seed));
  ScenarioOptions opt;
  opt.m = a.m;
  opt.main_effect = a.main_effect;
  opt.interaction = a.interaction;
  auto sc = build_scenario(scenario_from_string(a.scenario), a.p, a.q, rng, opt);
  sc.seed = a.seed;
  sc.n_per_group = a.n;
  auto data = simulate_dataset(sc, a.n, a.burn_in, a.thin, derive_seed(a.seed, 1));
  write_grouped_csv(a.out, data);
  std::printf("wrote %zu groups x %zu rows x %zu variables to %s\n", a.q, a.n, a.p, a.out.c_str());
  if (!a.truth.empty()) {
    Json t;
    t["scenario"] = a.scenario;
    t["p"] = a.p;
    t["q"] = a.q;
    t["n_per_group"] = a.n;
    t["seed"] = a.seed;
    t["m"] = a.m;
    t["main_effect"] = a.main_effect;
    t["interaction"] = a.interaction;
    t["gibbs_burn_in"] = a.burn_in;
    t["gibbs_thin"] = a.thin;
    t["group_labels"] = group_labels(data);
    t["graphs"] = graphs_to_json(sc.graphs);
    const fs::path tp(a.truth);
    if (tp.has_parent_path()) ensure_dir(tp.parent_path().string());
    write_json_file(a.truth, t);
  }
  return 0;
}

int run_fit(const FitArgs& a) {
  const auto data = read_grouped_csv(a.data);
  RunConfig rc = a.config.empty() ? RunConfig{} : read_run_config(a.config);
  apply_overrides(rc.sampler, a.engine, a.iterations, a.burn_in);
  if (a.thin) rc.sampler.thin = *a.thin;
  if (a.seed) rc.sampler.seed = *a.seed;
  if (a.cutoff) rc.cutoff = *a.cutoff;
  if (a.chains) rc.chains = *a.chains;
  rc.validate();

  const auto chains = run_chains(data, rc.sampler, rc.chains, a.threads);
  ensure_dir(a.out);
  bool failed = false;
  std::vector<PpiTable> tables;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const std::string dir = chains.size() == 1 ? a.out : join(a.out, "chain_" + std::to_string(c));
    write_fit_outputs(dir, chains[c], data, rc, a.data);
    if (!a.quiet) print_chain(chains[c], chains.size() == 1 ? "" : "[chain " + std::to_string(c) + "] ", rc.cutoff);
    if (chains[c].laplace_failure_rate() > rc.sampler.max_laplace_failure_rate) failed = true;
    if (chains[c].iterations > chains[c].burn_in) tables.push_back(ppi(chains[c]));
  }
  if (chains.size() > 1 && tables.size() == chains.size()) {
    PpiTable mean = tables[0];
    for (std::size_t c = 1; c < tables.size(); ++c)
      for (std::size_t x = 0; x < mean.q(); ++x)
        for (std::size_t e = 0; e < mean.values[x].size(); ++e) mean.values[x][e] += tables[c].values[x][e];
    for (auto& row : mean.values)
      for (auto& v : row) v /= static_cast<double>(tables.size());
    write_ppi_csv(join(a.out, "ppi.csv"), mean, group_labels(data));
    Json d;
    d["chains"] = chains.size();
    Json seeds = Json::array();
    for (const auto& ch : chains) seeds.push_back(ch.seed);
    d["seeds"] = seeds;
    d["ppi_correlation"] = correlation_matrix(tables);
    d["mean_ppi"] = mean.values;
    write_json_file(join(a.out, "diagnostics.json"), d);
    if (!a.quiet) std::printf("wrote merged PPI and diagnostics for %zu chains\n", chains.size());
  }
  if (failed) {
    std::fprintf(stderr, "error: Laplace failure rate exceeded %.3g\n", rc.sampler.max_laplace_failure_rate);
    return 4;
  }
  return 0;
}

int run_select(const SelectArgs& a) {
  const auto lc = load_chain(a.chain);
  SummaryOptions o;
  o.cutoff = a.cutoff;
  o.fdr_bound = a.fdr_bound;
  o.blocks = a.blocks;
  o.group_labels = labels_from(lc.meta, lc.chain.q);
  if (lc.meta.contains("variable_names")) o.variable_names = lc.meta["variable_names"].get<std::vector<std::string>>();
  ChainOutput chain = lc.chain;
  if (a.burn_in) {
    if (*a.burn_in >= chain.iterations) throw ConfigError("burn_in must be smaller than the number of iterations");
    // Recount the accumulators from stored samples at the new burn-in.
    chain.burn_in = *a.burn_in;
    chain.retained = 0;
    for (auto& row : chain.inclusion_counts) std::fill(row.begin(), row.end(), 0);
    std::fill(chain.epsilon_counts.begin(), chain.epsilon_counts.end(), 0);
    const auto t = ppi(lc.chain, a.burn_in);
    const auto th = theta_ppi(lc.chain, a.burn_in);
    std::size_t kept = 0;
    for (const auto& s : chain.samples) kept += s.iteration > chain.burn_in;
    chain.retained = kept;
    for (std::size_t x = 0; x < chain.q; ++x)
      for (std::size_t e = 0; e < t.values[x].size(); ++e)
        chain.inclusion_counts[x][e] = static_cast<std::uint64_t>(std::llround(t.values[x][e] * kept));
    for (std::size_t x = 0; x < chain.q; ++x)
      for (std::size_t h = x + 1; h < chain.q; ++h)
        chain.epsilon_counts[group_pair_index(x, h, chain.q)] = static_cast<std::uint64_t>(std::llround(th[x][h] * kept));
  }
  const auto j = summary_json(chain, o);
  if (a.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(a.out, j);
    const auto& sel = j["selected"]["graphs"];
    for (std::size_t x = 0; x < sel.size(); ++x)
      std::printf("%s: %zu edges\n", o.group_labels[x].c_str(), sel[x].size());
  }
  return 0;
}

int run_evaluate(const EvaluateArgs& a) {
  if (!a.study.empty()) {
    auto cfg = study_config_from_json(read_json_file(a.study));
    if (a.threads) cfg.threads = *a.threads;
    const auto report = replicate_study(cfg);
    const std::string dir = a.out.empty() ? "." : a.out;
    ensure_dir(dir);
    write_study_csv(join(dir, "study.csv"), report);
    write_json_file(join(dir, "study.json"), study_report_to_json(report));
    std::printf("%-9s %-7s %-16s %-16s\n", "scenario", "method", "MCC (SE)", "F1 (SE)");
    for (const auto& c : report.cells)
      std::printf("%-9s %-7s %.3f (%.3f)    %.3f (%.3f)\n", to_string(c.scenario).c_str(), to_string(c.method).c_str(),
                  c.mean_mcc, c.se_mcc, c.mean_f1, c.se_f1);
    return 0;
  }
  if (a.chain.empty() || a.truth.empty()) throw ConfigError("evaluate needs --study, or both --chain and --truth");
  const auto lc = load_chain(a.chain);
  const Json truth = read_json_file(a.truth);
  std::size_t tp = 0;
  try {
    tp = truth.at("p").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("truth file: ") + e.what());
  }
  if (tp != lc.chain.p) throw DimensionError("truth graphs and chain differ in the number of variables");
  const auto graphs = graphs_from_json(truth.at("graphs"), tp);
  if (graphs.size() != lc.chain.q) throw DimensionError("truth graphs and chain differ in the number of groups");
  const auto sel = select_graphs(ppi(lc.chain), a.cutoff);
  const auto labels = labels_from(lc.meta, lc.chain.q);
  Json out;
  const auto pooled = confusion(graphs, sel.graphs);
  out["cutoff"] = a.cutoff;
  out["mcc"] = mcc(pooled);
  out["f1"] = f1(pooled);
  out["confusion"] = {{"tp", pooled.tp}, {"tn", pooled.tn}, {"fp", pooled.fp}, {"fn", pooled.fn}};
  Json per = Json::array();
  for (std::size_t x = 0; x < graphs.size(); ++x) {
    const auto c = confusion(graphs[x], sel.graphs[x]);
    per.push_back({{"group", labels[x]}, {"mcc", mcc(c)}, {"f1", f1(c)}});
  }
  out["groups"] = per;
  std::printf("MCC %.4f  F1 %.4f  (tp %ld, fp %ld, fn %ld, tn %ld)\n", mcc(pooled), f1(pooled), pooled.tp, pooled.fp,
              pooled.fn, pooled.tn);
  if (!a.out.empty()) write_json_file(a.out, out);
  return 0;
}

int run_converge(const ConvergeArgs& a) {
  std::vector<PpiTable> tables;
  std::vector<std::string> names;
  if (!a.chains.empty()) {
    if (a.chains.size() < 2) throw ConfigError("converge needs at least two chain directories");
    for (const auto& dir : a.chains) {
      tables.push_back(ppi(load_chain(dir).chain));
      names.push_back(dir);
    }
  } else {
    if (a.data.empty()) throw ConfigError("converge needs --data or two --chain directories");
    const auto data = read_grouped_csv(a.data);
    RunConfig rc = a.config.empty() ? RunConfig{} : read_run_config(a.config);
    apply_overrides(rc.sampler, a.engine, a.iterations, a.burn_in);
    rc.validate();
    std::vector<std::uint64_t> seeds = a.seeds;
    if (seeds.empty()) seeds = {rc.sampler.seed, rc.sampler.seed + 1};
    if (seeds.size() < 2) throw ConfigError("converge needs at least two seeds");
    std::vector<SamplerConfig> cfgs;
    for (auto s : seeds) {
      auto c = rc.sampler;
      c.seed = s;
      c.keep_samples = false;
      tables.push_back(ppi(run_chain(data, c)));
      names.push_back("seed " + std::to_string(s));
    }
  }
  Json out;
  out["chains"] = names;
  out["ppi_correlation"] = correlation_matrix(tables);
  const auto r = chain_correlation(tables[0], tables[1]);
  out["correlation"] = r ? Json(*r) : Json(nullptr);
  if (r) std::printf("PPI correlation %.4f\n", *r);
  else std::printf("PPI correlation undefined (constant PPI table)\n");
  if (!a.out.empty()) write_json_file(a.out, out);
  return 0;
}

int run_ingest(const IngestArgs& a) {
  const auto spec = read_ingest_spec(a.spec);
  const auto res = ingest(a.csv, spec);
  write_grouped_csv(a.out, res.data);
  const auto report = ingest_report_to_json(res.report);
  if (!a.report.empty()) write_json_file(a.report, report);
  std::printf("read %zu rows, dropped %zu;", res.report.rows_read, res.report.rows_dropped);
  for (std::size_t x = 0; x < res.report.group_labels.size(); ++x)
    std::printf(" %s=%zu", res.report.group_labels[x].c_str(), res.report.group_sizes[x]);
  std::printf("\n");
  return 0;
}

int run_export(const ExportArgs& a) {
  const Json s = read_json_file(a.summary);
  std::size_t p = 0;
  std::vector<std::string> labels, names;
  Json graphs;
  try {
    const auto& meta = s.at("meta");
    p = meta.at("p").get<std::size_t>();
    labels = labels_from(meta, meta.at("q").get<std::size_t>());
    if (meta.contains("variable_names")) names = meta["variable_names"].get<std::vector<std::string>>();
    if (a.level == "selected") graphs = s.at("selected").at("graphs");
    else if (a.level == "q25" || a.level == "mean" || a.level == "q75") {
      if (s.at("quantile_graphs").is_null()) throw DataError("summary has no quantile graphs (too few stored samples)");
      graphs = s.at("quantile_graphs").at(a.level);
    } else {
      throw ConfigError("unknown level '" + a.level + "' (expected selected, q25, mean or q75)");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed summary '" + a.summary + "': " + e.what());
  }
  const auto files = export_graphs(graphs_from_json(graphs, p), export_format_from_string(a.format), a.out,
                                   a.prefix, labels, names);
  for (const auto& f : files) std::printf("%s\n", f.c_str());
  return 0;
}

}  // namespace multising::cli
