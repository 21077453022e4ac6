#include "multising/fb_engine.hpp"

#include <chrono>
#include <cmath>

#include "multising/ising.hpp"
#include "multising/numeric.hpp"

namespace multising {

const LogMarginal* MarginalCache::find(const std::string& key) {
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++misses_;
    return nullptr;
  }
  ++hits_;
  order_.splice(order_.begin(), order_, it->second);
  return &it->second->second;
}

void MarginalCache::insert(const std::string& key, LogMarginal value) {
  if (capacity_ == 0) return;
  auto it = index_.find(key);
  if (it != index_.end()) {
    it->second->second = value;
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  order_.emplace_front(key, value);
  index_.emplace(key, order_.begin());
  if (index_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

FbModel::FbModel(const GroupedData& data, const SamplerConfig& cfg) : p_(data.p()) {
  if (p_ > kMaxEnumerationNodes)
    throw DimensionError("the exact-likelihood engine supports at most 20 variables (got " +
                         std::to_string(p_) + ")");
  const std::size_t q = data.q();
  if (!cfg.g_per_group.empty() && cfg.g_per_group.size() != q)
    throw ConfigError("g_per_group has " + std::to_string(cfg.g_per_group.size()) +
                      " entries but the data has " + std::to_string(q) + " groups");
  options_.tolerance = cfg.laplace_tol;
  options_.max_iterations = cfg.laplace_max_iter;
  for (std::size_t x = 0; x < q; ++x) {
    counts_.push_back(marginal_counts(data.groups[x]));
    const double g = cfg.g_per_group.empty() ? cfg.g : cfg.g_per_group[x];
    hypers_.push_back(default_dy_hyper(p_, g));
    caches_.emplace_back(cfg.cache_capacity);
  }
}

LogMarginal FbModel::log_marginal(std::size_t x, const EdgeIndicators& delta) {
  const std::string key = delta.key();
  if (const auto* hit = caches_[x].find(key)) return *hit;
  ++laplace_calls;
  auto value = multising::log_marginal(counts_[x], hypers_[x], delta, options_);
  if (!value.converged) ++laplace_failures;
  caches_[x].insert(key, value);
  return value;
}

FbState initial_fb_state(FbModel& model, const SamplerConfig& cfg) {
  FbState st;
  const std::size_t q = model.q();
  st.delta.assign(q, EdgeIndicators(model.p()));
  st.coupling = initial_coupling(cfg, model.p(), q);
  for (std::size_t x = 0; x < q; ++x) {
    const auto lm = model.log_marginal(x, st.delta[x]);
    if (!lm.converged)
      throw NumericalError("Laplace approximation failed for the empty starting graph");
    st.cached_logml.push_back(lm.value);
  }
  return st;
}

MoveResult fb_flip_edge(FbState& state, std::size_t x, std::size_t e,
                        FbModel& model, Rng& rng) {
  MoveResult res{true, false, 0.0};
  EdgeIndicators proposal = state.delta[x];
  proposal.bits[e] ^= 1u;
  const auto lm = model.log_marginal(x, proposal);
  // Auto-reject when the Laplace optimiser did not converge; the uniform
  // draw is still consumed so the random stream does not depend on it.
  const double u = uniform01(rng);
  if (!lm.converged) {
    res.log_ratio = kNegInf;
    return res;
  }
  res.log_ratio = (lm.value - state.cached_logml[x]) +
                  mrf_flip_delta(state.delta, state.coupling, x, e);
  res.accepted = res.log_ratio >= 0.0 || std::log(u) < res.log_ratio;
  if (res.accepted) {
    state.delta[x] = std::move(proposal);
    state.cached_logml[x] = lm.value;
  }
  return res;
}

MoveResult fb_graph_step(FbState& state, std::size_t x, FbModel& model, Rng& rng) {
  const std::size_t edges = state.delta[x].size();
  if (edges == 0) return {};
  const auto e = std::uniform_int_distribution<std::size_t>(0, edges - 1)(rng);
  return fb_flip_edge(state, x, e, model, rng);
}

ChainOutput run_fb_chain(const GroupedData& data, const SamplerConfig& config, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  data.validate();
  if (!is_exact(config.engine))
    throw ConfigError("run_fb_chain called with engine " + to_string(config.engine));
  const std::size_t p = data.p();
  const std::size_t q = data.q();
  if (q == 0) throw DataError("no groups in the data");
  if (q > kMaxGroups) throw DimensionError("at most 16 groups are supported");
  const SamplerConfig cfg = config.resolved(p);

  FbModel model(data, cfg);
  FbState state = initial_fb_state(model, cfg);
  ChainOutput out = start_output(cfg, p, q);
  record_iteration(out, 0, state.delta, state.coupling);

  const bool coupled = is_coupled(cfg.engine);
  CouplingSettings settings{MrfHyper{cfg.a, cfg.b}, cfg.theta_prop, cfg.nu_prop, cfg.random_scan};
  CouplingCounters counters;
  MoveCounter graph;
  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    for (std::size_t x = 0; x < q; ++x)
      for (std::size_t s = 0; s < cfg.graph_sweeps; ++s) {
        const auto r = fb_graph_step(state, x, model, rng);
        if (r.attempted) graph.record(r.accepted);
      }
    if (coupled) coupling_sweep(state.coupling, state.delta, rng, settings, counters);
    record_iteration(out, t, state.delta, state.coupling);
  }

  out.acceptance["graph"] = graph;
  if (coupled) {
    out.acceptance["theta_between"] = counters.between;
    out.acceptance["theta_within"] = counters.within;
    out.acceptance["nu"] = counters.nu;
  }
  out.laplace_calls = model.laplace_calls;
  out.laplace_failures = model.laplace_failures;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace multising
