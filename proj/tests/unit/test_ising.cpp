#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "multising/ising.hpp"
#include "multising/numeric.hpp"
#include "oracles.hpp"

using namespace multising;

namespace {

CanonicalParams random_params(std::size_t p, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  CanonicalParams lam(p);
  for (auto& v : lam.main) v = nd(rng);
  for (auto& v : lam.inter) v = nd(rng);
  return lam;
}

BinaryDataset make_data(std::size_t n, std::size_t p, std::mt19937_64& rng) {
  std::bernoulli_distribution bd(0.5);
  std::vector<std::uint8_t> cells(n * p);
  for (auto& c : cells) c = bd(rng) ? 1 : 0;
  return BinaryDataset(n, p, std::move(cells));
}

}  // namespace

TEST(LogPsi, ZeroParamsGiveTwoToThePower) {
  for (std::size_t p = 1; p <= 12; ++p) {
    const double v = std::exp(log_psi(CanonicalParams(p)));
    EXPECT_NEAR(v / std::ldexp(1.0, static_cast<int>(p)), 1.0, 1e-12) << "p=" << p;
  }
  EXPECT_NEAR(log_psi(CanonicalParams(3)), std::log(8.0), 1e-14);
}

TEST(LogPsi, SingleNode) {
  CanonicalParams lam({std::log(3.0)}, {});
  EXPECT_NEAR(log_psi(lam), std::log(4.0), 1e-14);
}

TEST(LogPsi, TwoNodeEnumeration) {
  CanonicalParams lam({-1.0, -1.0}, {1.5});
  EXPECT_NEAR(log_psi(lam), std::log(1 + 2 * std::exp(-1.0) + std::exp(-0.5)), 1e-14);
}

TEST(LogPsi, RejectsOversizeAndNonFinite) {
  EXPECT_THROW(log_psi(CanonicalParams(21)), DimensionError);
  CanonicalParams lam(2);
  lam.main[0] = std::nan("");
  EXPECT_THROW(log_psi(lam), DataError);
}

TEST(LogPsi, LargeParametersStayFinite) {
  CanonicalParams lam({400.0, 400.0}, {400.0});
  EXPECT_NEAR(log_psi(lam), 1200.0, 1e-9);
}

TEST(ExactCellProbs, KnownTables) {
  for (double v : exact_cell_probs(CanonicalParams(2))) EXPECT_DOUBLE_EQ(v, 0.25);
  const auto one = exact_cell_probs(CanonicalParams(1));
  EXPECT_DOUBLE_EQ(one[0], 0.5);
  EXPECT_DOUBLE_EQ(one[1], 0.5);

  const auto pr = exact_cell_probs(CanonicalParams({-1.0, -1.0}, {1.5}));
  const double w[4] = {1.0, std::exp(-1.0), std::exp(-1.0), std::exp(-0.5)};
  const double z = w[0] + w[1] + w[2] + w[3];
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(pr[c], w[c] / z, 1e-15);
}

TEST(ExactCellProbs, SumsToOneAndBaselineCell) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto lam = random_params(5, rng);
    const auto pr = exact_cell_probs(lam);
    double s = 0;
    for (double v : pr) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(pr[0], std::exp(-log_psi(lam)), 1e-14);
  }
}

TEST(ExactCellProbs, FactorisesWithoutInteractions) {
  std::mt19937_64 rng(11);
  for (std::size_t p = 1; p <= 6; ++p) {
    auto lam = random_params(p, rng);
    std::fill(lam.inter.begin(), lam.inter.end(), 0.0);
    const auto pr = exact_cell_probs(lam);
    for (std::uint32_t c = 0; c < pr.size(); ++c) {
      double prod = 1.0;
      for (std::size_t r = 0; r < p; ++r) {
        const double q1 = 1.0 / (1.0 + std::exp(-lam.main[r]));
        prod *= oracle::bit(c, r) ? q1 : 1.0 - q1;
      }
      EXPECT_NEAR(pr[c], prod, 1e-13);
    }
  }
}

TEST(MarginalCounts, HandCount) {
  const auto d = BinaryDataset::from_rows({{1, 0}, {1, 1}, {0, 1}});
  const auto y = marginal_counts(d);
  EXPECT_EQ(y.n, 3u);
  EXPECT_EQ(y(0, 0), 2);
  EXPECT_EQ(y(1, 1), 2);
  EXPECT_EQ(y(1, 0), 1);
  EXPECT_EQ(y(0, 1), 1);
}

TEST(MarginalCounts, AllZeroAndAllOne) {
  const auto z = marginal_counts(BinaryDataset(4, 3, std::vector<std::uint8_t>(12, 0)));
  for (long v : z.y) EXPECT_EQ(v, 0);
  const auto o = marginal_counts(BinaryDataset(4, 3, std::vector<std::uint8_t>(12, 1)));
  for (long v : o.y) EXPECT_EQ(v, 4);
}

TEST(MarginalCounts, PairCountsBoundedByMargins) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto y = marginal_counts(make_data(30, 5, rng));
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t j = 0; j < r; ++j) {
        EXPECT_LE(y(r, j), std::min(y(r, r), y(j, j)));
        EXPECT_LE(y(r, r), static_cast<long>(y.n));
      }
  }
}

TEST(IsingLoglik, UniformAndZeroRow) {
  std::mt19937_64 rng(5);
  const auto d = make_data(13, 4, rng);
  EXPECT_NEAR(ising_loglik(d, CanonicalParams(4)), -13.0 * 4.0 * std::log(2.0), 1e-10);
  const auto lam = random_params(4, rng);
  const auto zero = BinaryDataset::from_rows({{0, 0, 0, 0}});
  EXPECT_NEAR(ising_loglik(zero, lam), -log_psi(lam), 1e-12);
}

TEST(IsingLoglik, MatchesPerRowEnumeration) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t p = 1 + t % 6;
    const auto d = make_data(10 + t % 7, p, rng);
    const auto lam = random_params(p, rng);
    const double got = ising_loglik(d, lam);
    const double want = oracle::loglik_by_rows(d, lam);
    EXPECT_NEAR(got, want, 1e-10 * std::abs(want)) << "instance " << t;
  }
}

TEST(IsingLoglik, DimensionMismatch) {
  const auto d = BinaryDataset::from_rows({{0, 1}});
  EXPECT_THROW(ising_loglik(d, CanonicalParams(3)), DimensionError);
}

TEST(NodeConditional, ZeroRowAndSingleNode) {
  std::mt19937_64 rng(2);
  const auto d = make_data(9, 3, rng);
  std::vector<double> zero(3, 0.0);
  EXPECT_NEAR(node_conditional_loglik(d, zero, 2), -9.0 * std::log(2.0), 1e-12);

  const double c = 0.7;
  const auto one = BinaryDataset::from_rows({{1}});
  std::vector<double> row{c};
  EXPECT_NEAR(node_conditional_loglik(one, row, 0), c - std::log1p(std::exp(c)), 1e-14);
}

TEST(NodeConditional, MatchesLogisticRegression) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    const auto d = make_data(5, 3, rng);
    std::vector<double> row{nd(rng), nd(rng), nd(rng)};
    std::vector<int> y;
    std::vector<std::vector<double>> x;
    for (std::size_t i = 0; i < 5; ++i) {
      y.push_back(d(i, 2));
      x.push_back({1.0, double(d(i, 0)), double(d(i, 1))});
    }
    EXPECT_NEAR(node_conditional_loglik(d, row, 2), oracle::logistic_loglik(y, x, row), 1e-12);
  }
}

TEST(NodeConditional, RejectsBadIndex) {
  const auto d = BinaryDataset::from_rows({{0, 1}});
  std::vector<double> row{0.0, 0.0, 0.0};
  EXPECT_THROW(node_conditional_loglik(d, row, 2), DimensionError);
  EXPECT_THROW(node_conditional_loglik(d, row, 0), DimensionError);
}

TEST(QuasiLoglik, ZeroParamsAndSingleNode) {
  std::mt19937_64 rng(29);
  const auto d = make_data(11, 5, rng);
  EXPECT_NEAR(quasi_loglik(d, CanonicalParams(5)), -55.0 * std::log(2.0), 1e-10);
  const auto d1 = make_data(11, 1, rng);
  const auto lam = random_params(1, rng);
  EXPECT_DOUBLE_EQ(quasi_loglik(d1, lam), ising_loglik(d1, lam));
}

TEST(QuasiLoglik, SumOfNodeConditionals) {
  std::mt19937_64 rng(31);
  const auto d = make_data(20, 4, rng);
  const auto lam = random_params(4, rng);
  double want = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    std::vector<int> y;
    std::vector<std::vector<double>> x;
    std::vector<double> beta{lam.main[r]};
    for (std::size_t j = 0; j < r; ++j) beta.push_back(lam.interaction(r, j));
    for (std::size_t i = 0; i < 20; ++i) {
      y.push_back(d(i, r));
      std::vector<double> xi{1.0};
      for (std::size_t j = 0; j < r; ++j) xi.push_back(d(i, j));
      x.push_back(xi);
    }
    want += oracle::logistic_loglik(y, x, beta);
  }
  EXPECT_NEAR(quasi_loglik(d, lam), want, 1e-10);
}

TEST(Gibbs, UniformMeans) {
  const auto d = gibbs_sample(CanonicalParams(3), 20000, 10, 1, 99ULL);
  for (std::size_t r = 0; r < 3; ++r) {
    double m = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) m += d(i, r);
    m /= d.rows();
    EXPECT_NEAR(m, 0.5, 3.0 * std::sqrt(0.25 / d.rows()) * 1.5);
  }
}

TEST(Gibbs, DeterministicUnderSeed) {
  CanonicalParams lam({-1.0, -1.0, -1.0}, {1.5, 0.0, 0.0});
  EXPECT_EQ(gibbs_sample(lam, 200, 10, 2, 5ULL), gibbs_sample(lam, 200, 10, 2, 5ULL));
  EXPECT_NE(gibbs_sample(lam, 200, 10, 2, 5ULL), gibbs_sample(lam, 200, 10, 2, 6ULL));
}

TEST(Gibbs, CellFrequenciesMatchEnumeration) {
  CanonicalParams lam({-1.0, -1.0, -1.0}, {1.5, 0.0, 0.0});
  const auto d = gibbs_sample(lam, 200000, 100, 1, 12345ULL);
  const auto want = oracle::cell_probs(lam);
  std::vector<double> freq(8, 0.0);
  for (std::size_t i = 0; i < d.rows(); ++i) freq[oracle::row_cell(d, i)] += 1.0 / d.rows();
  double tv = 0;
  for (int c = 0; c < 8; ++c) tv += 0.5 * std::abs(freq[c] - want[c]);
  EXPECT_LT(tv, 0.02);
}

TEST(Gibbs, RejectsBadArguments) {
  EXPECT_THROW(gibbs_sample(CanonicalParams(2), 0, 0, 1, 1ULL), ConfigError);
  EXPECT_THROW(gibbs_sample(CanonicalParams(2), 5, 0, 0, 1ULL), ConfigError);
}
