#include "multising/ab_engine.hpp"

#include <chrono>
#include <cmath>

#include "multising/ising.hpp"
#include "multising/numeric.hpp"

namespace multising {

namespace {

void check_row(std::span<const double> row, std::span<const std::uint8_t> drow,
               const BinaryDataset& data, std::size_t r) {
  if (r >= data.cols()) throw DimensionError("node index out of range");
  if (row.size() != r + 1 || drow.size() != r)
    throw DimensionError("node row must hold r + 1 values and r indicators");
}

double coord_variance(std::size_t k, std::span<const std::uint8_t> drow,
                      const SpikeSlabHyper& hyper) {
  return (k == 0 || drow[k - 1]) ? hyper.rho : hyper.gamma;
}

// Linear predictors of node r for every observation.
std::vector<double> linear_predictor(std::span<const double> row,
                                     const BinaryDataset& data, std::size_t r) {
  std::vector<double> eta(data.rows(), row[0]);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto z = data.row(i);
    for (std::size_t j = 0; j < r; ++j)
      if (z[j]) eta[i] += row[1 + j];
  }
  return eta;
}

// Data part of d/d row[k]; covariate of coordinate k is 1 or z_{k-1}.
double score(std::size_t k, std::span<const double> eta, const BinaryDataset& data,
             std::size_t r) {
  double g = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (k > 0 && !data(i, k - 1)) continue;
    g += static_cast<double>(data(i, r)) - logistic(eta[i]);
  }
  return g;
}

}  // namespace

std::vector<std::uint8_t> delta_row(const EdgeIndicators& delta, std::size_t r) {
  std::vector<std::uint8_t> out(r);
  for (std::size_t j = 0; j < r; ++j) out[j] = delta.has(r, j) ? 1 : 0;
  return out;
}

double node_log_objective(std::span<const double> row,
                          std::span<const std::uint8_t> drow,
                          const BinaryDataset& data, std::size_t r,
                          const SpikeSlabHyper& hyper) {
  check_row(row, drow, data, r);
  return node_conditional_loglik(data, row, r) + spike_slab_logpdf(row, drow, hyper);
}

std::vector<double> quasi_grad(std::span<const double> row,
                               std::span<const std::uint8_t> drow,
                               const BinaryDataset& data, std::size_t r,
                               const SpikeSlabHyper& hyper) {
  check_row(row, drow, data, r);
  const auto eta = linear_predictor(row, data, r);
  std::vector<double> grad(row.size());
  for (std::size_t k = 0; k < row.size(); ++k)
    grad[k] = score(k, eta, data, r) - row[k] / coord_variance(k, drow, hyper);
  return grad;
}

MalaCounts mala_step(AbState& state, std::size_t x, std::size_t r,
                     const BinaryDataset& data, const SpikeSlabHyper& hyper,
                     Rng& rng, bool all_coordinates) {
  auto& lambda = state.lambda[x];
  auto row = node_row(lambda, r);
  const auto drow = delta_row(state.delta[x], r);
  auto eta = linear_predictor(row, data, r);
  const double sigma = state.sigma;
  const double var = sigma * sigma;
  std::vector<double> eta_new(eta.size());
  MalaCounts counts;

  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k > 0 && !drow[k - 1] && !all_coordinates) continue;
    const double v = coord_variance(k, drow, hyper);
    const double cur = row[k];
    const double g_cur = score(k, eta, data, r) - cur / v;
    const double prop = cur + 0.5 * var * g_cur + sigma * standard_normal(rng);
    const double diff = prop - cur;

    double ll_diff = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      const bool covered = k == 0 || data(i, k - 1);
      eta_new[i] = covered ? eta[i] + diff : eta[i];
      if (!covered) continue;
      ll_diff += (data(i, r) ? diff : 0.0) - softplus(eta_new[i]) + softplus(eta[i]);
    }
    const double g_prop = score(k, eta_new, data, r) - prop / v;
    const double log_ratio = ll_diff + normal_logpdf(prop, v) - normal_logpdf(cur, v) +
                             normal_logpdf(cur, prop + 0.5 * var * g_prop, var) -
                             normal_logpdf(prop, cur + 0.5 * var * g_cur, var);
    ++counts.attempted;
    const double u = uniform01(rng);
    if (std::isfinite(log_ratio) && (log_ratio >= 0.0 || std::log(u) < log_ratio)) {
      ++counts.accepted;
      row[k] = prop;
      eta.swap(eta_new);
    }
  }

  lambda.main[r] = row[0];
  for (std::size_t j = 0; j < r; ++j) lambda.interaction(r, j) = row[1 + j];
  return counts;
}

void spike_refresh(AbState& state, std::size_t x, std::size_t r,
                   const SpikeSlabHyper& hyper, Rng& rng) {
  const double sd = std::sqrt(hyper.gamma);
  for (std::size_t j = 0; j < r; ++j)
    if (!state.delta[x].has(r, j))
      state.lambda[x].interaction(r, j) = sd * standard_normal(rng);
}

double delta_flip_log_ratio(const AbState& state, std::size_t x, std::size_t r,
                            std::size_t j, const SpikeSlabHyper& hyper) {
  if (j >= r) throw DimensionError("delta_flip_step requires j < r");
  const double value = state.lambda[x].interaction(r, j);
  const bool on = state.delta[x].has(r, j);
  const double v_new = on ? hyper.gamma : hyper.rho;
  const double v_old = on ? hyper.rho : hyper.gamma;
  return normal_logpdf(value, v_new) - normal_logpdf(value, v_old) +
         mrf_flip_delta(state.delta, state.coupling, x, pair_index(r, j));
}

MoveResult delta_flip_step(AbState& state, std::size_t x, std::size_t r,
                           std::size_t j, const SpikeSlabHyper& hyper, Rng& rng) {
  MoveResult res{true, false, delta_flip_log_ratio(state, x, r, j, hyper)};
  const double u = uniform01(rng);
  res.accepted = res.log_ratio >= 0.0 || std::log(u) < res.log_ratio;
  if (res.accepted) state.delta[x].set(r, j, !state.delta[x].has(r, j));
  return res;
}

AbState initial_ab_state(const SamplerConfig& cfg, std::size_t p, std::size_t q) {
  AbState st;
  st.lambda.assign(q, CanonicalParams(p));
  st.delta.assign(q, EdgeIndicators(p));
  st.coupling = initial_coupling(cfg, p, q);
  st.sigma = cfg.sigma;
  return st;
}

ChainOutput run_ab_chain(const GroupedData& data, const SamplerConfig& config, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  data.validate();
  if (is_exact(config.engine))
    throw ConfigError("run_ab_chain called with engine " + to_string(config.engine));
  const std::size_t p = data.p();
  const std::size_t q = data.q();
  if (q == 0) throw DataError("no groups in the data");
  if (q > kMaxGroups) throw DimensionError("at most 16 groups are supported");
  const SamplerConfig cfg = config.resolved(p);
  const SpikeSlabHyper hyper{*cfg.rho, *cfg.gamma};
  hyper.validate();

  AbState state = initial_ab_state(cfg, p, q);
  ChainOutput out = start_output(cfg, p, q);
  record_iteration(out, 0, state.delta, state.coupling, state.lambda);

  const bool coupled = is_coupled(cfg.engine);
  const bool langevin_spike = cfg.spike_update == SpikeUpdate::langevin;
  CouplingSettings settings{MrfHyper{cfg.a, cfg.b}, cfg.theta_prop, cfg.nu_prop, cfg.random_scan};
  CouplingCounters counters;
  MoveCounter mala, flips;
  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    MalaCounts iter_mala;
    for (std::size_t x = 0; x < q; ++x) {
      const auto& group = data.groups[x];
      for (std::size_t r = 0; r < p; ++r) {
        const auto m = mala_step(state, x, r, group, hyper, rng, langevin_spike);
        iter_mala.attempted += m.attempted;
        iter_mala.accepted += m.accepted;
        if (!langevin_spike) spike_refresh(state, x, r, hyper, rng);
        for (std::size_t j = 0; j < r; ++j)
          flips.record(delta_flip_step(state, x, r, j, hyper, rng).accepted);
      }
    }
    mala.attempted += iter_mala.attempted;
    mala.accepted += iter_mala.accepted;
    if (cfg.tune_sigma && t <= cfg.burn_in && iter_mala.attempted > 0) {
      const double rate = static_cast<double>(iter_mala.accepted) /
                          static_cast<double>(iter_mala.attempted);
      const double step = std::pow(static_cast<double>(t), -0.6);
      state.sigma = std::exp(std::log(state.sigma) + step * (rate - cfg.tune_target));
    }
    if (coupled) coupling_sweep(state.coupling, state.delta, rng, settings, counters);
    record_iteration(out, t, state.delta, state.coupling, state.lambda);
  }

  out.acceptance["mala"] = mala;
  out.acceptance["delta_flip"] = flips;
  if (coupled) {
    out.acceptance["theta_between"] = counters.between;
    out.acceptance["theta_within"] = counters.within;
    out.acceptance["nu"] = counters.nu;
  }
  out.final_sigma = state.sigma;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace multising
