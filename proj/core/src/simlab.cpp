#include "multising/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "multising/graphsel.hpp"
#include "multising/ising.hpp"
#include "multising/sampler.hpp"

namespace multising {

EdgeIndicators barabasi_albert(std::size_t p, std::size_t m, Rng& rng, bool permute) {
  if (p < 2) throw ConfigError("barabasi_albert: p must be at least 2");
  if (m < 1 || m >= p) throw ConfigError("barabasi_albert: m must satisfy 1 <= m < p");
  EdgeIndicators g(p);
  std::vector<double> degree(p, 0.0);
  // The first m nodes form the seed set; with m = 1 that is a single node.
  for (std::size_t t = m; t < p; ++t) {
    std::vector<double> w(degree.begin(), degree.begin() + static_cast<long>(t));
    for (auto& v : w) v += 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
      const std::size_t target = pick(rng);
      w[target] = 0.0;  // without replacement
      g.set(t, target, true);
      degree[target] += 1.0;
      degree[t] += 1.0;
    }
  }
  if (!permute) return g;
  std::vector<std::size_t> label(p);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::shuffle(label.begin(), label.end(), rng);
  EdgeIndicators out(p);
  for (std::size_t e = 0; e < g.size(); ++e)
    if (g.bits[e]) {
      const auto [r, j] = pair_at(e);
      out.set(label[r], label[j], true);
    }
  return out;
}

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::A: return "A";
    case ScenarioKind::B: return "B";
    case ScenarioKind::C: return "C";
    case ScenarioKind::D: return "D";
  }
  return "?";
}

ScenarioKind scenario_from_string(const std::string& name) {
  if (name == "A" || name == "a") return ScenarioKind::A;
  if (name == "B" || name == "b") return ScenarioKind::B;
  if (name == "C" || name == "c") return ScenarioKind::C;
  if (name == "D" || name == "d") return ScenarioKind::D;
  throw ConfigError("unknown scenario '" + name + "' (expected A, B, C or D)");
}

std::vector<CanonicalParams> graphs_to_params(const std::vector<EdgeIndicators>& graphs,
                                              double main_effect, double interaction) {
  std::vector<CanonicalParams> out;
  for (const auto& g : graphs) {
    CanonicalParams l(g.p);
    std::fill(l.main.begin(), l.main.end(), main_effect);
    for (std::size_t e = 0; e < g.size(); ++e) l.inter[e] = g.bits[e] ? interaction : 0.0;
    out.push_back(std::move(l));
  }
  return out;
}

Scenario build_scenario(ScenarioKind kind, std::size_t p, std::size_t q, Rng& rng,
                        const ScenarioOptions& options) {
  if ((kind == ScenarioKind::C || kind == ScenarioKind::D) && q != 4)
    throw ConfigError("scenarios C and D are defined for q = 4 groups");
  if (q < 2) throw ConfigError("scenarios need at least two groups");
  if (q > kMaxGroups) throw ConfigError("at most 16 groups are supported");

  auto distinct = [&](std::size_t count) {
    for (std::size_t attempt = 0; attempt < options.max_tries; ++attempt) {
      std::vector<EdgeIndicators> gs;
      for (std::size_t k = 0; k < count; ++k) gs.push_back(barabasi_albert(p, options.m, rng));
      bool ok = true;
      for (std::size_t a = 0; a < count && ok; ++a)
        for (std::size_t b = a + 1; b < count && ok; ++b) ok = gs[a] != gs[b];
      if (ok) return gs;
    }
    throw ConfigError("could not draw " + std::to_string(count) +
                      " different graphs on " + std::to_string(p) + " nodes");
  };

  Scenario s;
  s.kind = kind;
  s.p = p;
  s.q = q;
  switch (kind) {
    case ScenarioKind::A:
      s.graphs.assign(q, barabasi_albert(p, options.m, rng));
      break;
    case ScenarioKind::B:
      s.graphs = distinct(q);
      break;
    case ScenarioKind::C: {
      const auto gs = distinct(2);
      s.graphs = {gs[0], gs[0], gs[1], gs[1]};
      break;
    }
    case ScenarioKind::D: {
      const auto gs = distinct(2);
      s.graphs = {gs[0], gs[0], gs[0], gs[1]};
      break;
    }
  }
  s.params = graphs_to_params(s.graphs, options.main_effect, options.interaction);
  return s;
}

GroupedData simulate_dataset(const Scenario& scenario, std::size_t n_x, std::size_t burn_in,
                             std::size_t thin, const std::vector<std::uint64_t>& seeds) {
  if (seeds.size() != scenario.params.size())
    throw ConfigError("simulate_dataset: one seed per group is required");
  GroupedData d;
  for (std::size_t x = 0; x < scenario.params.size(); ++x) {
    auto ds = gibbs_sample(scenario.params[x], n_x, burn_in, thin, seeds[x]);
    ds.set_label("g" + std::to_string(x));
    d.groups.push_back(std::move(ds));
  }
  for (std::size_t r = 0; r < scenario.p; ++r) d.variable_names.push_back("v" + std::to_string(r + 1));
  return d;
}

GroupedData simulate_dataset(const Scenario& scenario, std::size_t n_x, std::size_t burn_in,
                             std::size_t thin, std::uint64_t seed) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t x = 0; x < scenario.params.size(); ++x) seeds.push_back(derive_seed(seed, x));
  return simulate_dataset(scenario, n_x, burn_in, thin, seeds);
}

GroupedData simulate_dataset(const Scenario& scenario, std::size_t n_x, std::size_t burn_in,
                             std::size_t thin, Rng& rng) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t x = 0; x < scenario.params.size(); ++x) seeds.push_back(rng());
  return simulate_dataset(scenario, n_x, burn_in, thin, seeds);
}

void StudyConfig::validate() const {
  if (replicates == 0) throw ConfigError("a study needs at least one replicate");
  if (scenarios.empty() || methods.empty()) throw ConfigError("a study needs scenarios and methods");
  for (auto m : methods)
    if (is_exact(m) && p > kMaxEnumerationNodes)
      throw ConfigError("method " + to_string(m) + " supports at most 20 variables");
  if (n_per_group == 0) throw ConfigError("n_per_group must be positive");
  if (!(cutoff >= 0.0 && cutoff < 1.0)) throw ConfigError("cutoff must lie in [0, 1)");
  sampler.validate();
}

const StudyCell* StudyReport::find(ScenarioKind s, Engine m) const {
  for (const auto& c : cells)
    if (c.scenario == s && c.method == m) return &c;
  return nullptr;
}

std::uint64_t replicate_data_seed(std::uint64_t master, ScenarioKind s, std::size_t r) {
  return derive_seed(derive_seed(master, static_cast<std::uint64_t>(s) + 1), r);
}

std::uint64_t replicate_chain_seed(std::uint64_t master, ScenarioKind s, std::size_t r,
                                   Engine m) {
  return derive_seed(replicate_data_seed(master, s, r), 1000 + static_cast<std::uint64_t>(m));
}

std::pair<double, double> mean_se(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

StudyReport replicate_study(const StudyConfig& config, bool keep_chains) {
  config.validate();
  StudyReport report;
  report.config = config;
  report.replicates = config.replicates;

  struct Job {
    std::size_t cell;
    std::size_t replicate;
  };
  std::vector<Job> jobs;
  for (auto s : config.scenarios)
    for (auto m : config.methods) {
      StudyCell cell;
      cell.scenario = s;
      cell.method = m;
      cell.runs.resize(config.replicates);
      report.cells.push_back(std::move(cell));
    }
  for (std::size_t c = 0; c < report.cells.size(); ++c)
    for (std::size_t r = 0; r < config.replicates; ++r) jobs.push_back({c, r});

  auto run_job = [&](const Job& job) {
    auto& cell = report.cells[job.cell];
    const auto data_seed = replicate_data_seed(config.seed, cell.scenario, job.replicate);
    Rng rng(mix_seed(data_seed));
    const auto scenario = build_scenario(cell.scenario, config.p, config.q, rng, config.scenario);
    const auto data = simulate_dataset(scenario, config.n_per_group, config.gibbs_burn_in,
                                       config.gibbs_thin, derive_seed(data_seed, 7));
    SamplerConfig sc = config.sampler;
    sc.engine = cell.method;
    sc.seed = replicate_chain_seed(config.seed, cell.scenario, job.replicate, cell.method);
    const auto start = std::chrono::steady_clock::now();
    auto chain = run_chain(data, sc);
    const auto selected = select_graphs(ppi(chain), config.cutoff);
    auto& res = cell.runs[job.replicate];
    res.replicate = job.replicate;
    res.mcc = mcc(scenario.graphs, selected);
    res.f1 = f1(scenario.graphs, selected);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (keep_chains) res.chain.push_back(std::move(chain));
  };

  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        run_job(jobs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(config.threads, 1, jobs.size());
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (auto& cell : report.cells) {
    std::vector<double> m, f, s;
    for (const auto& r : cell.runs) {
      m.push_back(r.mcc);
      f.push_back(r.f1);
      s.push_back(r.seconds);
    }
    std::tie(cell.mean_mcc, cell.se_mcc) = mean_se(m);
    std::tie(cell.mean_f1, cell.se_f1) = mean_se(f);
    cell.mean_seconds = mean_se(s).first;
  }
  return report;
}

}  // namespace multising
