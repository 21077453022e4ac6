#include "multising/coupling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "multising/numeric.hpp"

namespace multising {

void ThetaProposal::validate() const {
  if (!(alpha_t > 0.0) || !(beta_t > 0.0))
    throw ConfigError("theta proposal shape and rate must be positive");
}

void NuProposal::validate() const {
  if (!(a_t > 0.0) || !(b_t > 0.0))
    throw ConfigError("nu proposal Beta shapes must be positive");
}

namespace {

// log-sum-exp over patterns of each popcount k of the pairwise energy
// sum_{x<h} theta_xh m_x m_h. Lets each edge's normaliser cost O(q).
std::vector<double> popcount_energy_lse(std::span<const double> theta, std::size_t q) {
  const std::uint32_t patterns = 1u << q;
  std::vector<double> energy(patterns, 0.0);
  for (std::uint32_t m = 1; m < patterns; ++m) {
    const auto top = static_cast<std::size_t>(std::bit_width(m) - 1);
    const std::uint32_t rest = m ^ (1u << top);
    double e = energy[rest];
    for (std::uint32_t b = rest; b != 0; b &= b - 1)
      e += theta[top * q + static_cast<std::size_t>(std::countr_zero(b))];
    energy[m] = e;
  }
  std::vector<std::vector<double>> by_count(q + 1);
  for (std::uint32_t m = 0; m < patterns; ++m)
    by_count[static_cast<std::size_t>(std::popcount(m))].push_back(energy[m]);
  std::vector<double> out(q + 1);
  for (std::size_t k = 0; k <= q; ++k) out[k] = log_sum_exp(by_count[k]);
  return out;
}

double pattern_energy(std::uint32_t mask, std::span<const double> theta, std::size_t q) {
  double e = 0.0;
  for (std::uint32_t a = mask; a != 0; a &= a - 1) {
    const auto x = static_cast<std::size_t>(std::countr_zero(a));
    for (std::uint32_t b = a & (a - 1); b != 0; b &= b - 1)
      e += theta[x * q + static_cast<std::size_t>(std::countr_zero(b))];
  }
  return e;
}

double log_normaliser(double nu, std::span<const double> lse_by_count) {
  double m = kNegInf;
  for (std::size_t k = 0; k < lse_by_count.size(); ++k)
    m = std::max(m, nu * static_cast<double>(k) + lse_by_count[k]);
  double acc = 0.0;
  for (std::size_t k = 0; k < lse_by_count.size(); ++k)
    acc += std::exp(nu * static_cast<double>(k) + lse_by_count[k] - m);
  return m + std::log(acc);
}

double edges_joint_logprob(std::span<const double> theta, std::size_t q,
                           std::span<const double> nu,
                           std::span<const std::uint32_t> masks) {
  const auto lse = popcount_energy_lse(theta, q);
  double total = 0.0;
  for (std::size_t e = 0; e < masks.size(); ++e) {
    total += nu[e] * std::popcount(masks[e]) + pattern_energy(masks[e], theta, q) -
             log_normaliser(nu[e], lse);
  }
  return total;
}

bool accept(double log_ratio, Rng& rng) {
  if (log_ratio >= 0.0) return true;
  if (std::isnan(log_ratio) || log_ratio == kNegInf) return false;
  return std::log(uniform01(rng)) < log_ratio;
}

void check_pair(const CouplingState& state, std::size_t x, std::size_t h) {
  if (x == h || x >= state.q || h >= state.q)
    throw DimensionError("coupling move: invalid group pair");
}

}  // namespace

std::vector<std::uint32_t> edge_masks(std::span<const EdgeIndicators> deltas) {
  if (deltas.size() > kMaxGroups)
    throw DimensionError("too many groups for the MRF prior (max 16)");
  const std::size_t edges = deltas.empty() ? 0 : deltas.front().size();
  std::vector<std::uint32_t> masks(edges, 0);
  for (std::size_t x = 0; x < deltas.size(); ++x) {
    if (deltas[x].size() != edges)
      throw DimensionError("edge_masks: graphs differ in size");
    for (std::size_t e = 0; e < edges; ++e)
      if (deltas[x].bits[e]) masks[e] |= 1u << x;
  }
  return masks;
}

double mrf_flip_delta(std::span<const EdgeIndicators> delta,
                      const CouplingState& coupling, std::size_t x, std::size_t e) {
  const std::size_t q = delta.size();
  std::vector<std::uint8_t> others;
  std::vector<double> theta_x;
  others.reserve(q);
  theta_x.reserve(q);
  for (std::size_t h = 0; h < q; ++h) {
    if (h == x) continue;
    others.push_back(delta[h].bits[e]);
    theta_x.push_back(coupling.theta_at(x, h));
  }
  const bool current = delta[x].bits[e] != 0;
  return mrf_edge_logprob(!current, others, coupling.nu[e], theta_x) -
         mrf_edge_logprob(current, others, coupling.nu[e], theta_x);
}

double mrf_joint_logprob(std::uint32_t mask, double nu, const CouplingState& state) {
  const auto lse = popcount_energy_lse(state.theta, state.q);
  return nu * std::popcount(mask) + pattern_energy(mask, state.theta, state.q) -
         log_normaliser(nu, lse);
}

double theta_conditional_logpost(const CouplingState& state, std::size_t x,
                                 std::size_t h, bool epsilon, double theta,
                                 std::span<const std::uint32_t> masks) {
  check_pair(state, x, h);
  double prior = theta_prior_logpdf(theta, epsilon, state.alpha, state.beta);
  prior += epsilon ? std::log(state.omega) : std::log1p(-state.omega);
  if (prior == kNegInf) return kNegInf;
  std::vector<double> th = state.theta;
  th[x * state.q + h] = th[h * state.q + x] = theta;
  return prior + edges_joint_logprob(th, state.q, state.nu, masks);
}

double nu_conditional_logpost(const CouplingState& state, double nu,
                              std::uint32_t mask, const MrfHyper& hyper) {
  return nu_logpdf(nu, hyper.a, hyper.b) + mrf_joint_logprob(mask, nu, state);
}

MoveResult theta_between_move(CouplingState& state, std::size_t x, std::size_t h,
                              std::span<const std::uint32_t> masks, Rng& rng,
                              const ThetaProposal& prop) {
  const bool on = state.eps_at(x, h);
  const double current = state.theta_at(x, h);
  const double lp_current = theta_conditional_logpost(state, x, h, on, current, masks);
  MoveResult res{true, false, 0.0};
  if (on) {
    const double lp_new = theta_conditional_logpost(state, x, h, false, 0.0, masks);
    res.log_ratio = lp_new +
                    theta_prior_logpdf(current, true, prop.alpha_t, prop.beta_t) -
                    lp_current;
    res.accepted = accept(res.log_ratio, rng);
    if (res.accepted) state.set(x, h, false, 0.0);
  } else {
    double proposal = 0.0;
    while (!(proposal > 0.0)) proposal = gamma_shape_rate(rng, prop.alpha_t, prop.beta_t);
    const double lp_new = theta_conditional_logpost(state, x, h, true, proposal, masks);
    res.log_ratio = lp_new - lp_current -
                    theta_prior_logpdf(proposal, true, prop.alpha_t, prop.beta_t);
    res.accepted = accept(res.log_ratio, rng);
    if (res.accepted) state.set(x, h, true, proposal);
  }
  return res;
}

MoveResult theta_within_move(CouplingState& state, std::size_t x, std::size_t h,
                             std::span<const std::uint32_t> masks, Rng& rng,
                             const ThetaProposal& prop) {
  check_pair(state, x, h);
  if (!state.eps_at(x, h)) return {};
  const double current = state.theta_at(x, h);
  double proposal = 0.0;
  while (!(proposal > 0.0)) proposal = gamma_shape_rate(rng, prop.alpha_t, prop.beta_t);
  MoveResult res{true, false, 0.0};
  res.log_ratio = theta_conditional_logpost(state, x, h, true, proposal, masks) +
                  theta_prior_logpdf(current, true, prop.alpha_t, prop.beta_t) -
                  theta_conditional_logpost(state, x, h, true, current, masks) -
                  theta_prior_logpdf(proposal, true, prop.alpha_t, prop.beta_t);
  res.accepted = accept(res.log_ratio, rng);
  if (res.accepted) state.set(x, h, true, proposal);
  return res;
}

MoveResult nu_step(CouplingState& state, std::size_t edge, std::uint32_t mask,
                   Rng& rng, const MrfHyper& hyper, const NuProposal& prop) {
  if (edge >= state.nu.size()) throw DimensionError("nu_step: edge out of range");
  double u = 0.0;
  do {
    u = beta_draw(rng, prop.a_t, prop.b_t);
  } while (!(u > 0.0 && u < 1.0));
  const double proposal = logit(u);
  if (!std::isfinite(proposal)) return {true, false, kNegInf};
  const double current = state.nu[edge];
  MoveResult res{true, false, 0.0};
  res.log_ratio = nu_conditional_logpost(state, proposal, mask, hyper) +
                  nu_logpdf(current, prop.a_t, prop.b_t) -
                  nu_conditional_logpost(state, current, mask, hyper) -
                  nu_logpdf(proposal, prop.a_t, prop.b_t);
  res.accepted = accept(res.log_ratio, rng);
  if (res.accepted) state.nu[edge] = proposal;
  return res;
}

void coupling_sweep(CouplingState& state, std::span<const EdgeIndicators> deltas,
                    Rng& rng, const CouplingSettings& settings,
                    CouplingCounters& counters) {
  const auto masks = edge_masks(deltas);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < state.q; ++x)
    for (std::size_t h = x + 1; h < state.q; ++h) pairs.emplace_back(x, h);
  std::vector<std::size_t> edges(masks.size());
  std::iota(edges.begin(), edges.end(), std::size_t{0});
  if (settings.random_scan) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::shuffle(edges.begin(), edges.end(), rng);
  }
  for (auto [x, h] : pairs) {
    counters.between.record(
        theta_between_move(state, x, h, masks, rng, settings.theta_prop).accepted);
    const auto within = theta_within_move(state, x, h, masks, rng, settings.theta_prop);
    if (within.attempted) counters.within.record(within.accepted);
  }
  for (std::size_t e : edges)
    counters.nu.record(nu_step(state, e, masks[e], rng, settings.mrf, settings.nu_prop).accepted);
}

}  // namespace multising
