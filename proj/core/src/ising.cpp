#include "multising/ising.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "multising/numeric.hpp"

namespace multising {

namespace {

void require_enumerable(std::size_t p) {
  if (p > kMaxEnumerationNodes)
    throw DimensionError("exact enumeration limited to p <= " +
                         std::to_string(kMaxEnumerationNodes) + " (got p = " +
                         std::to_string(p) + ")");
}

void require_finite(const CanonicalParams& lambda) {
  if (!lambda.all_finite())
    throw DataError("canonical parameter contains non-finite values");
}

}  // namespace

std::vector<double> cell_energies(const CanonicalParams& lambda) {
  const std::size_t p = lambda.p();
  require_enumerable(p);
  require_finite(lambda);
  const std::size_t cells = std::size_t{1} << p;
  std::vector<double> e(cells, 0.0);
  // e(c) = e(c without its top bit h) + lambda_hh + sum_{j<h, j in c} lambda_hj
  for (std::size_t c = 1; c < cells; ++c) {
    const auto h = static_cast<std::size_t>(std::bit_width(c) - 1);
    const std::size_t rest = c ^ (std::size_t{1} << h);
    double v = e[rest] + lambda.main[h];
    for (std::size_t bits = rest; bits != 0; bits &= bits - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(bits));
      v += lambda.inter[pair_index(h, j)];
    }
    e[c] = v;
  }
  return e;
}

double log_psi(const CanonicalParams& lambda) {
  const auto e = cell_energies(lambda);
  return log_sum_exp(e);
}

std::vector<double> exact_cell_probs(const CanonicalParams& lambda) {
  auto e = cell_energies(lambda);
  const double lz = log_sum_exp(e);
  for (auto& v : e) v = std::exp(v - lz);
  return e;
}

MarginalCounts marginal_counts(const BinaryDataset& data) {
  const std::size_t p = data.cols();
  MarginalCounts out{p, data.rows(), std::vector<long>(p * p, 0)};
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto z = data.row(i);
    for (std::size_t r = 0; r < p; ++r) {
      if (!z[r]) continue;
      for (std::size_t j = 0; j <= r; ++j)
        if (z[j]) ++out.y[r * p + j];
    }
  }
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t j = 0; j < r; ++j) out.y[j * p + r] = out.y[r * p + j];
  return out;
}

double ising_loglik(const BinaryDataset& data, const CanonicalParams& lambda) {
  if (data.cols() != lambda.p())
    throw DimensionError("ising_loglik: data and parameter dimensions differ");
  const auto y = marginal_counts(data);
  const std::size_t p = lambda.p();
  double linear = 0.0;
  for (std::size_t r = 0; r < p; ++r) {
    linear += lambda.main[r] * static_cast<double>(y(r, r));
    for (std::size_t j = 0; j < r; ++j)
      linear += lambda.interaction(r, j) * static_cast<double>(y(r, j));
  }
  return linear - static_cast<double>(data.rows()) * log_psi(lambda);
}

std::vector<double> node_row(const CanonicalParams& lambda, std::size_t r) {
  if (r >= lambda.p()) throw DimensionError("node_row: node index out of range");
  std::vector<double> row(r + 1);
  row[0] = lambda.main[r];
  for (std::size_t j = 0; j < r; ++j) row[1 + j] = lambda.interaction(r, j);
  return row;
}

double node_conditional_loglik(const BinaryDataset& data,
                               std::span<const double> row, std::size_t r) {
  if (r >= data.cols())
    throw DimensionError("node_conditional_loglik: node index out of range");
  if (row.size() != r + 1)
    throw DimensionError("node_conditional_loglik: row must hold r + 1 values");
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto z = data.row(i);
    double eta = row[0];
    for (std::size_t j = 0; j < r; ++j)
      if (z[j]) eta += row[1 + j];
    total += (z[r] ? eta : 0.0) - softplus(eta);
  }
  return total;
}

double quasi_loglik(const BinaryDataset& data, const CanonicalParams& lambda) {
  if (data.cols() != lambda.p())
    throw DimensionError("quasi_loglik: data and parameter dimensions differ");
  double total = 0.0;
  for (std::size_t r = 0; r < lambda.p(); ++r) {
    const auto row = node_row(lambda, r);
    total += node_conditional_loglik(data, row, r);
  }
  return total;
}

BinaryDataset gibbs_sample(const CanonicalParams& lambda, std::size_t n,
                           std::size_t burn_in, std::size_t thin, Rng& rng) {
  if (n == 0) throw ConfigError("gibbs_sample: n must be positive");
  if (thin == 0) throw ConfigError("gibbs_sample: thin must be positive");
  require_finite(lambda);
  const std::size_t p = lambda.p();
  // Dense symmetric interaction matrix for the full conditionals.
  std::vector<double> w(p * p, 0.0);
  for (std::size_t r = 1; r < p; ++r)
    for (std::size_t j = 0; j < r; ++j)
      w[r * p + j] = w[j * p + r] = lambda.interaction(r, j);

  std::vector<std::uint8_t> z(p, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto sweep = [&] {
    for (std::size_t r = 0; r < p; ++r) {
      double eta = lambda.main[r];
      const double* wr = w.data() + r * p;
      for (std::size_t j = 0; j < p; ++j)
        if (z[j] && j != r) eta += wr[j];
      z[r] = unif(rng) < logistic(eta) ? 1 : 0;
    }
  };
  for (std::size_t s = 0; s < burn_in; ++s) sweep();
  std::vector<std::uint8_t> cells;
  cells.reserve(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < thin; ++s) sweep();
    cells.insert(cells.end(), z.begin(), z.end());
  }
  return BinaryDataset(n, p, std::move(cells));
}

BinaryDataset gibbs_sample(const CanonicalParams& lambda, std::size_t n,
                           std::size_t burn_in, std::size_t thin,
                           std::uint64_t seed) {
  Rng rng(seed);
  return gibbs_sample(lambda, n, burn_in, thin, rng);
}

}  // namespace multising
