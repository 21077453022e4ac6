#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "multising/ising.hpp"
#include "multising/laplace.hpp"
#include "multising/priors.hpp"
#include "oracles.hpp"

using namespace multising;

TEST(MrfEdge, ScalarCases) {
  EXPECT_NEAR(mrf_edge_logprob(true, {}, 0.0, {}), std::log(0.5), 1e-15);

  std::vector<std::uint8_t> others{1, 0};
  std::vector<double> th{0.7, 0.3};
  EXPECT_NEAR(mrf_edge_logprob(false, others, -0.4, th), -std::log1p(std::exp(-0.4 + 0.7)), 1e-14);

  std::vector<std::uint8_t> o3{1, 1, 0};
  std::vector<double> t3{0.5, 0.5, 0.5};
  EXPECT_NEAR(mrf_edge_logprob(true, o3, -2.2, t3), (-2.2 + 1.0) - std::log1p(std::exp(-1.2)), 1e-14);
}

TEST(MrfEdge, TwoPointNormalisation) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0, 2);
  std::uniform_real_distribution<double> ud(0, 3);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint8_t> o{std::uint8_t(t & 1), std::uint8_t((t >> 1) & 1), std::uint8_t((t >> 2) & 1)};
    std::vector<double> th{ud(rng), ud(rng), ud(rng)};
    const double nu = nd(rng);
    const double s = std::exp(mrf_edge_logprob(true, o, nu, th)) + std::exp(mrf_edge_logprob(false, o, nu, th));
    EXPECT_NEAR(s, 1.0, 1e-13);
  }
}

TEST(MrfGraph, ZeroNuZeroTheta) {
  const std::size_t p = 5;
  EdgeIndicators d(p);
  d.set(3, 1, true);
  d.set(4, 0, true);
  std::vector<EdgeIndicators> others{EdgeIndicators(p)};
  std::vector<double> nu(num_pairs(p), 0.0), th{0.0};
  EXPECT_NEAR(mrf_graph_logprob(d, others, nu, th), -10.0 * std::log(2.0), 1e-12);
}

TEST(MrfGraph, EmptyGraphIndependentEdges) {
  const std::size_t p = 4;
  std::vector<double> nu{-1.0, 0.5, 2.0, -0.3, 0.0, 1.1};
  std::vector<EdgeIndicators> others{EdgeIndicators(p)};
  std::vector<double> th{0.0};
  double want = 0;
  for (double v : nu) want -= std::log1p(std::exp(v));
  EXPECT_NEAR(mrf_graph_logprob(EdgeIndicators(p), others, nu, th), want, 1e-12);
}

TEST(MrfGraph, MatchesPerEdgeSum) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution bd(0.5);
  std::normal_distribution<double> nd;
  for (std::size_t p = 2; p <= 5; ++p)
    for (std::size_t q = 2; q <= 4; ++q) {
      std::vector<EdgeIndicators> g(q, EdgeIndicators(p));
      for (auto& gi : g)
        for (auto& b : gi.bits) b = bd(rng);
      std::vector<double> nu(num_pairs(p));
      for (auto& v : nu) v = nd(rng);
      std::vector<double> th(q - 1);
      for (auto& v : th) v = std::abs(nd(rng));
      std::vector<EdgeIndicators> others(g.begin() + 1, g.end());
      double want = 0;
      double indep = 0;
      for (std::size_t e = 0; e < num_pairs(p); ++e) {
        double c = nu[e];
        for (std::size_t h = 0; h + 1 < q; ++h) c += th[h] * others[h].bits[e];
        want += g[0].bits[e] * c - std::log1p(std::exp(c));
        const double pi = 1.0 / (1.0 + std::exp(-nu[e]));
        indep += std::log(g[0].bits[e] ? pi : 1 - pi);
      }
      EXPECT_NEAR(mrf_graph_logprob(g[0], others, nu, th), want, 1e-12);
      std::vector<double> zero(q - 1, 0.0);
      EXPECT_NEAR(mrf_graph_logprob(g[0], others, nu, zero), indep, 1e-12);
    }
}

TEST(DyKernel, ZeroLambdaAndEmptyGraph) {
  const auto hyper = default_dy_hyper(3, 0.02);
  EXPECT_NEAR(dy_log_kernel(CanonicalParams(3), hyper, EdgeIndicators(3)), -0.02 * 3 * std::log(2.0), 1e-15);

  CanonicalParams lam({0.3, -1.2, 2.0}, {5.0, -3.0, 1.0});
  double want = 0;
  for (std::size_t r = 0; r < 3; ++r)
    want += lam.main[r] * hyper.s.main[r] - hyper.g * std::log1p(std::exp(lam.main[r]));
  EXPECT_NEAR(dy_log_kernel(lam, hyper, EdgeIndicators(3)), want, 1e-13);
}

TEST(DyKernel, TwoNodeFullGraphFormula) {
  const auto hyper = default_dy_hyper(2, 0.02);
  CanonicalParams lam({0.4, -0.9}, {1.3});
  const double psi = 1 + std::exp(0.4) + std::exp(-0.9) + std::exp(0.4 - 0.9 + 1.3);
  const double want = 0.4 * 0.01 - 0.9 * 0.01 + 1.3 * 0.005 - 0.02 * std::log(psi);
  EdgeIndicators full(2);
  full.set(1, 0, true);
  EXPECT_NEAR(dy_log_kernel(lam, hyper, full), want, 1e-15);
}

TEST(DyKernel, ConjugacyIdentity) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  std::bernoulli_distribution bd(0.5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t p = 2 + t % 3;
    std::vector<std::uint8_t> cells(15 * p);
    for (auto& c : cells) c = bd(rng);
    BinaryDataset d(15, p, cells);
    EdgeIndicators delta(p);
    for (auto& b : delta.bits) b = bd(rng);
    CanonicalParams lam(p);
    for (auto& v : lam.main) v = nd(rng);
    for (auto& v : lam.inter) v = nd(rng);
    const auto prior = default_dy_hyper(p, 0.5 + t % 4);
    const auto post = posterior_hyper(prior, marginal_counts(d));
    const double lhs = dy_log_kernel(lam, prior, delta) + ising_loglik(d, restrict_to(lam, delta));
    EXPECT_NEAR(lhs, dy_log_kernel(lam, post, delta), 1e-10);
  }
}

TEST(SpikeSlab, Cases) {
  const SpikeSlabHyper h{2.0, 0.5};
  std::vector<double> zero(4, 0.0);
  std::vector<std::uint8_t> on(3, 1), off(3, 0);
  EXPECT_NEAR(spike_slab_logpdf(zero, on, h), -2.0 * std::log(2 * M_PI * 2.0), 1e-14);
  // Main effect always uses the slab.
  EXPECT_NEAR(spike_slab_logpdf(zero, off, h),
              -0.5 * std::log(2 * M_PI * 2.0) - 1.5 * std::log(2 * M_PI * 0.5), 1e-14);

  std::vector<double> row{0.3, -1.0, 0.2, 2.5};
  std::vector<std::uint8_t> mixed{1, 0, 1};
  const double want = oracle::normal_logpdf(0.3, 2.0) + oracle::normal_logpdf(-1.0, 2.0) +
                      oracle::normal_logpdf(0.2, 0.5) + oracle::normal_logpdf(2.5, 2.0);
  EXPECT_NEAR(spike_slab_logpdf(row, mixed, h), want, 1e-14);
  EXPECT_LT(spike_slab_logpdf(row, mixed, h), spike_slab_logpdf(zero, mixed, h));
}

TEST(SpikeSlab, RejectsBadHyper) {
  EXPECT_THROW((SpikeSlabHyper{0.5, 2.0}.validate()), ConfigError);
  EXPECT_THROW((SpikeSlabHyper{1.0, 0.0}.validate()), ConfigError);
}

TEST(ThetaPrior, Cases) {
  EXPECT_EQ(theta_prior_logpdf(0.0, false, 1.0, 2.0), 0.0);
  EXPECT_EQ(theta_prior_logpdf(0.1, false, 1.0, 2.0), -INFINITY);
  for (double t : {0.1, 1.0, 3.3}) EXPECT_NEAR(theta_prior_logpdf(t, true, 1.0, 2.0), std::log(2.0) - 2 * t, 1e-14);
  EXPECT_EQ(theta_prior_logpdf(0.0, true, 2.0, 2.0), -INFINITY);
  EXPECT_NEAR(theta_prior_logpdf(0.5, true, 2.0, 3.0), 2 * std::log(3.0) + std::log(0.5) - 1.5, 1e-14);
}

TEST(NuPrior, Cases) {
  EXPECT_NEAR(nu_logpdf(0.0, 1.0, 1.0), std::log(0.25), 1e-15);
  EXPECT_NEAR(nu_logpdf(0.0, 1.0, 3.0), std::log(3.0) - 4 * std::log(2.0), 1e-14);
  EXPECT_EQ(nu_logpdf(-INFINITY, 1.0, 3.0), -INFINITY);
  EXPECT_LT(nu_logpdf(-800.0, 1.0, 3.0), -700.0);
}

TEST(NuPrior, IntegratesToOne) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 3.0}, std::pair{2.0, 5.0}}) {
    const double v = oracle::integrate_line([&](double x) { return std::exp(nu_logpdf(x, a, b)); });
    EXPECT_NEAR(v, 1.0, 1e-6) << a << "," << b;
  }
}

TEST(DefaultDy, UniformTableCounts) {
  const auto h2 = default_dy_hyper(2, 0.02);
  EXPECT_NEAR(h2.s.main[0], 0.01, 1e-15);
  EXPECT_NEAR(h2.s.main[1], 0.01, 1e-15);
  EXPECT_NEAR(h2.s.interaction(1, 0), 0.005, 1e-15);
  const auto h3 = default_dy_hyper(3, 1.0);
  for (double v : h3.s.main) EXPECT_DOUBLE_EQ(v, 0.5);
  for (double v : h3.s.inter) EXPECT_DOUBLE_EQ(v, 0.25);
  for (std::size_t p = 2; p <= 8; ++p) {
    const auto h = default_dy_hyper(p, 3.0);
    EXPECT_NO_THROW(h.validate());
    for (double v : h.s.main) EXPECT_TRUE(v > 0 && v < 3.0);
    for (double v : h.s.inter) EXPECT_TRUE(v > 0 && v < 3.0);
  }
}
