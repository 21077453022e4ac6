#include "multising/priors.hpp"

#include <cmath>

#include "multising/ising.hpp"
#include "multising/numeric.hpp"

namespace multising {

void MrfHyper::validate() const {
  if (!(a > 0.0) || !(b > 0.0))
    throw ConfigError("MRF hyperparameters a and b must be positive");
}

CouplingState::CouplingState(std::size_t groups, std::size_t edges)
    : q(groups), theta(groups * groups, 0.0),
      epsilon(groups * groups, 0), nu(edges, 0.0) {}

void CouplingState::set(std::size_t x, std::size_t h, bool eps,
                        double value) noexcept {
  epsilon[x * q + h] = epsilon[h * q + x] = eps ? 1 : 0;
  theta[x * q + h] = theta[h * q + x] = value;
}

bool CouplingState::consistent() const noexcept {
  for (std::size_t x = 0; x < q; ++x) {
    if (theta[x * q + x] != 0.0 || epsilon[x * q + x] != 0) return false;
    for (std::size_t h = 0; h < q; ++h) {
      if (theta[x * q + h] != theta[h * q + x]) return false;
      if (epsilon[x * q + h] != epsilon[h * q + x]) return false;
      if (x == h) continue;
      const bool on = epsilon[x * q + h] != 0;
      if (on != (theta[x * q + h] > 0.0)) return false;
    }
  }
  return true;
}

void DyHyper::validate() const {
  if (!(g > 0.0)) throw ConfigError("DY prior: g must be positive");
  auto check = [&](double v) {
    if (!(v > 0.0 && v < g))
      throw ConfigError("DY prior: fictive counts must lie in (0, g)");
  };
  for (double v : s.main) check(v);
  for (double v : s.inter) check(v);
}

void SpikeSlabHyper::validate() const {
  if (!(gamma > 0.0) || !(rho > gamma))
    throw ConfigError("spike-and-slab prior requires rho > gamma > 0");
}

double mrf_edge_logprob(bool delta, std::span<const std::uint8_t> delta_other,
                        double nu, std::span<const double> theta_x) {
  if (delta_other.size() != theta_x.size())
    throw DimensionError("mrf_edge_logprob: theta and delta lengths differ");
  double eta = nu;
  for (std::size_t k = 0; k < theta_x.size(); ++k)
    if (delta_other[k]) eta += theta_x[k];
  return (delta ? eta : 0.0) - softplus(eta);
}

double mrf_graph_logprob(const EdgeIndicators& delta_x,
                         std::span<const EdgeIndicators> delta_other,
                         std::span<const double> nu,
                         std::span<const double> theta_x) {
  const std::size_t edges = delta_x.size();
  if (nu.size() != edges || delta_other.size() != theta_x.size())
    throw DimensionError("mrf_graph_logprob: inconsistent dimensions");
  for (const auto& d : delta_other)
    if (d.size() != edges)
      throw DimensionError("mrf_graph_logprob: graphs differ in size");
  double total = 0.0;
  std::vector<std::uint8_t> others(delta_other.size());
  for (std::size_t e = 0; e < edges; ++e) {
    for (std::size_t k = 0; k < delta_other.size(); ++k)
      others[k] = delta_other[k].bits[e];
    total += mrf_edge_logprob(delta_x.bits[e] != 0, others, nu[e], theta_x);
  }
  return total;
}

double dy_log_kernel(const CanonicalParams& lambda, const DyHyper& hyper,
                     const EdgeIndicators& delta) {
  const std::size_t p = lambda.p();
  if (hyper.s.p() != p || delta.size() != lambda.inter.size())
    throw DimensionError("dy_log_kernel: dimension mismatch");
  double linear = 0.0;
  for (std::size_t r = 0; r < p; ++r) linear += lambda.main[r] * hyper.s.main[r];
  for (std::size_t k = 0; k < lambda.inter.size(); ++k)
    if (delta.bits[k]) linear += lambda.inter[k] * hyper.s.inter[k];
  return linear - hyper.g * log_psi(restrict_to(lambda, delta));
}

double spike_slab_logpdf(std::span<const double> row,
                         std::span<const std::uint8_t> delta_row,
                         const SpikeSlabHyper& hyper) {
  if (row.empty() || delta_row.size() + 1 != row.size())
    throw DimensionError("spike_slab_logpdf: row and indicator lengths differ");
  double total = normal_logpdf(row[0], hyper.rho);
  for (std::size_t j = 0; j < delta_row.size(); ++j)
    total += normal_logpdf(row[1 + j], delta_row[j] ? hyper.rho : hyper.gamma);
  return total;
}

double theta_prior_logpdf(double theta, bool epsilon, double alpha, double beta) {
  if (!epsilon) return theta == 0.0 ? 0.0 : kNegInf;
  if (!(theta > 0.0)) {
    // Gamma density at zero: infinite for alpha < 1, beta for alpha = 1.
    if (theta < 0.0 || alpha > 1.0) return kNegInf;
    if (alpha == 1.0) return std::log(beta);
    return std::numeric_limits<double>::infinity();
  }
  return alpha * std::log(beta) - std::lgamma(alpha) +
         (alpha - 1.0) * std::log(theta) - beta * theta;
}

double nu_logpdf(double nu, double a, double b) {
  if (std::isinf(nu)) return kNegInf;
  return -log_beta_fn(a, b) + a * nu - (a + b) * softplus(nu);
}

DyHyper default_dy_hyper(std::size_t p, double g) {
  if (p > kMaxEnumerationNodes)
    throw DimensionError("default_dy_hyper: p exceeds enumeration limit");
  if (!(g > 0.0)) throw ConfigError("default_dy_hyper: g must be positive");
  // Mass g / 2^p per cell: half the cells have z_r = 1, a quarter z_r = z_j = 1.
  DyHyper h;
  h.g = g;
  h.s = CanonicalParams(std::vector<double>(p, g / 2.0),
                        std::vector<double>(num_pairs(p), g / 4.0));
  return h;
}

}  // namespace multising
