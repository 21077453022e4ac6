#include "multising/chain.hpp"

#include <cmath>

#include "multising/numeric.hpp"

namespace multising {

std::string to_string(Engine e) {
  switch (e) {
    case Engine::fb: return "fb";
    case Engine::ab: return "ab";
    case Engine::fbs: return "fbs";
    case Engine::abs: return "abs";
  }
  return "?";
}

Engine engine_from_string(const std::string& name) {
  if (name == "fb" || name == "FB") return Engine::fb;
  if (name == "ab" || name == "AB") return Engine::ab;
  if (name == "fbs" || name == "FBS") return Engine::fbs;
  if (name == "abs" || name == "ABS") return Engine::abs;
  throw ConfigError("unknown engine '" + name + "' (expected fb, ab, fbs or abs)");
}

std::string to_string(SpikeUpdate s) {
  return s == SpikeUpdate::prior_draw ? "prior_draw" : "langevin";
}

SpikeUpdate spike_update_from_string(const std::string& name) {
  if (name == "prior_draw") return SpikeUpdate::prior_draw;
  if (name == "langevin") return SpikeUpdate::langevin;
  throw ConfigError("unknown spike_update '" + name + "' (expected prior_draw or langevin)");
}

SamplerConfig SamplerConfig::resolved(std::size_t p) const {
  SamplerConfig c = *this;
  const bool high_dim = p > 10;
  if (!c.rho) c.rho = high_dim ? 10.0 : 2.0;
  if (!c.gamma) c.gamma = high_dim ? 0.1 : 0.5;
  if (!c.separate_prob) c.separate_prob = high_dim ? 0.1 : 0.2;
  return c;
}

void SamplerConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (iterations > 0 && burn_in >= iterations)
    fail("burn_in (" + std::to_string(burn_in) + ") must be smaller than iterations (" +
         std::to_string(iterations) + ")");
  if (thin == 0) fail("thin must be at least 1");
  if (graph_sweeps == 0) fail("graph_sweeps must be at least 1");
  if (rho && gamma && !(*rho > *gamma && *gamma > 0.0))
    fail("spike-and-slab prior requires rho > gamma > 0");
  if (rho && !(*rho > 0.0)) fail("rho must be positive");
  if (gamma && !(*gamma > 0.0)) fail("gamma must be positive");
  if (!(sigma > 0.0)) fail("sigma (MALA step size) must be positive");
  if (!(g > 0.0)) fail("g must be positive");
  for (double v : g_per_group)
    if (!(v > 0.0)) fail("every entry of g_per_group must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0)) fail("alpha and beta must be positive");
  if (!(omega >= 0.0 && omega <= 1.0)) fail("omega must lie in [0, 1]");
  if (!(a > 0.0) || !(b > 0.0)) fail("a and b must be positive");
  if (!(theta_init > 0.0)) fail("theta_init must be positive");
  if (separate_prob && !(*separate_prob > 0.0 && *separate_prob < 1.0))
    fail("separate_prob must lie in (0, 1)");
  if (!(laplace_tol > 0.0) || laplace_max_iter <= 0) fail("invalid Laplace settings");
  if (!(tune_target > 0.0 && tune_target < 1.0)) fail("tune_target must lie in (0, 1)");
  if (!(max_laplace_failure_rate >= 0.0 && max_laplace_failure_rate <= 1.0))
    fail("max_laplace_failure_rate must lie in [0, 1]");
  theta_prop.validate();
  nu_prop.validate();
}

std::size_t group_pair_index(std::size_t x, std::size_t h, std::size_t q) noexcept {
  if (x > h) std::swap(x, h);
  return x * q - x * (x + 1) / 2 + (h - x - 1);
}

CouplingState initial_coupling(const SamplerConfig& cfg, std::size_t p, std::size_t q) {
  CouplingState s(q, num_pairs(p));
  s.omega = cfg.omega;
  s.alpha = cfg.alpha;
  s.beta = cfg.beta;
  if (is_coupled(cfg.engine)) {
    for (std::size_t x = 0; x < q; ++x)
      for (std::size_t h = x + 1; h < q; ++h) s.set(x, h, true, cfg.theta_init);
    const double nu0 = logit(cfg.a / (cfg.a + cfg.b));
    for (auto& v : s.nu) v = nu0;
  } else {
    const double prob = cfg.separate_prob.value_or(p > 10 ? 0.1 : 0.2);
    for (auto& v : s.nu) v = logit(prob);
  }
  return s;
}

ChainOutput start_output(const SamplerConfig& cfg, std::size_t p, std::size_t q) {
  ChainOutput out;
  out.engine = cfg.engine;
  out.p = p;
  out.q = q;
  out.iterations = cfg.iterations;
  out.burn_in = cfg.burn_in;
  out.thin = cfg.thin;
  out.seed = cfg.seed;
  out.inclusion_counts.assign(q, std::vector<std::uint64_t>(num_pairs(p), 0));
  out.epsilon_counts.assign(group_pair_count(q), 0);
  out.config = cfg;
  return out;
}

void record_iteration(ChainOutput& out, std::size_t t,
                      std::span<const EdgeIndicators> deltas,
                      const CouplingState& coupling,
                      std::span<const CanonicalParams> lambda) {
  const std::size_t q = out.q;
  if (t > out.burn_in) {
    ++out.retained;
    for (std::size_t x = 0; x < q; ++x)
      for (std::size_t e = 0; e < deltas[x].size(); ++e)
        out.inclusion_counts[x][e] += deltas[x].bits[e];
    for (std::size_t x = 0; x < q; ++x)
      for (std::size_t h = x + 1; h < q; ++h)
        out.epsilon_counts[group_pair_index(x, h, q)] += coupling.eps_at(x, h) ? 1 : 0;
  }
  if (!out.config.keep_samples && t != 0) return;
  if (t != 0 && t % out.thin != 0) return;
  ChainSample s;
  s.iteration = t;
  for (const auto& d : deltas) s.delta.insert(s.delta.end(), d.bits.begin(), d.bits.end());
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t h = x + 1; h < q; ++h) {
      s.theta.push_back(coupling.theta_at(x, h));
      s.epsilon.push_back(coupling.eps_at(x, h) ? 1 : 0);
    }
  s.nu = coupling.nu;
  if (out.config.keep_lambda)
    for (const auto& l : lambda) {
      s.lambda.insert(s.lambda.end(), l.main.begin(), l.main.end());
      s.lambda.insert(s.lambda.end(), l.inter.begin(), l.inter.end());
    }
  out.samples.push_back(std::move(s));
}

}  // namespace multising
