#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "multising/ab_engine.hpp"
#include "multising/graphsel.hpp"
#include "multising/ising.hpp"
#include "multising/numeric.hpp"
#include "multising/simlab.hpp"
#include "oracles.hpp"

using namespace multising;

namespace {

BinaryDataset make_data(std::size_t n, std::size_t p, std::mt19937_64& rng) {
  std::bernoulli_distribution bd(0.4);
  std::vector<std::uint8_t> cells(n * p);
  for (auto& c : cells) c = bd(rng) ? 1 : 0;
  return BinaryDataset(n, p, std::move(cells));
}

GroupedData scenario_data(std::size_t p, std::size_t q, std::size_t n, std::uint64_t seed,
                          Scenario* truth = nullptr) {
  Rng srng(seed);
  const auto sc = build_scenario(ScenarioKind::A, p, q, srng);
  if (truth) *truth = sc;
  return simulate_dataset(sc, n, 1000, 10, seed + 1);
}

SamplerConfig ab_config(std::size_t iters) {
  SamplerConfig c;
  c.engine = Engine::ab;
  c.iterations = iters;
  c.burn_in = iters / 5;
  c.seed = 4;
  return c;
}

}  // namespace

TEST(QuasiGrad, MatchesFiniteDifferences) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> nd(0.0, 0.7);
  const SpikeSlabHyper hyper{2.0, 0.5};
  for (int t = 0; t < 100; ++t) {
    const std::size_t p = 2 + t % 7;
    const std::size_t r = t % p;
    const auto data = make_data(25, p, rng);
    std::vector<double> row(r + 1);
    for (auto& v : row) v = nd(rng);
    std::vector<std::uint8_t> drow(r);
    for (std::size_t j = 0; j < r; ++j) drow[j] = (t + j) % 2;
    auto f = [&](const std::vector<double>& v) {
      return oracle::normal_logpdf(v[0], 2.0) + [&] {
        double s = 0;
        for (std::size_t j = 0; j < r; ++j) s += oracle::normal_logpdf(v[1 + j], drow[j] ? 2.0 : 0.5);
        return s;
      }() + [&] {
        std::vector<int> y;
        std::vector<std::vector<double>> x;
        for (std::size_t i = 0; i < data.rows(); ++i) {
          y.push_back(data(i, r));
          std::vector<double> xi{1.0};
          for (std::size_t j = 0; j < r; ++j) xi.push_back(data(i, j));
          x.push_back(xi);
        }
        return oracle::logistic_loglik(y, x, v);
      }();
    };
    const auto got = quasi_grad(row, drow, data, r, hyper);
    const auto want = oracle::central_diff(f, row);
    for (std::size_t k = 0; k < row.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-6) << "instance " << t;
    EXPECT_NEAR(node_log_objective(row, drow, data, r, hyper), f(row), 1e-9);
  }
}

TEST(QuasiGrad, BalancedNodeAtZeroAndEmptyColumn) {
  const SpikeSlabHyper hyper{2.0, 0.5};
  const auto bal = BinaryDataset::from_rows({{0, 1}, {1, 0}, {0, 1}, {1, 0}});
  std::vector<double> zero{0.0, 0.0};
  std::vector<std::uint8_t> d{1};
  const auto g = quasi_grad(zero, d, bal, 1, hyper);
  EXPECT_NEAR(g[0], 0.0, 1e-15);
  // Covariate rows z_0 = 1 all have z_1 = 0: score is -2 * 1/2.
  EXPECT_NEAR(g[1], -1.0, 1e-15);

  // A covariate that is never on contributes only the prior term.
  const auto none = BinaryDataset::from_rows({{0, 1}, {0, 0}, {0, 1}});
  std::vector<double> row{0.3, 0.8};
  std::vector<std::uint8_t> off{0};
  EXPECT_NEAR(quasi_grad(row, off, none, 1, hyper)[1], -0.8 / 0.5, 1e-15);
}

TEST(QuasiGrad, RejectsBadShapes) {
  const auto d = BinaryDataset::from_rows({{0, 1}});
  std::vector<double> row{0.0};
  std::vector<std::uint8_t> drow{};
  EXPECT_THROW(quasi_grad(row, drow, d, 1, {}), DimensionError);
  EXPECT_THROW(quasi_grad(row, drow, d, 3, {}), DimensionError);
}

TEST(Mala, TinyStepAlwaysAccepted) {
  std::mt19937_64 g(2);
  GroupedData data;
  data.groups.push_back(make_data(40, 4, g));
  SamplerConfig cfg = ab_config(1);
  cfg.sigma = 1e-8;
  auto st = initial_ab_state(cfg, 4, 1);
  st.delta[0].bits = {1, 0, 1, 1, 0, 1};
  Rng rng(3);
  const SpikeSlabHyper hyper{2.0, 0.5};
  std::uint64_t att = 0, acc = 0;
  for (int t = 0; t < 200; ++t)
    for (std::size_t r = 0; r < 4; ++r) {
      const auto m = mala_step(st, 0, r, data.groups[0], hyper, rng);
      att += m.attempted;
      acc += m.accepted;
    }
  // Main effects plus included interactions: 1 + 2 + 3 + 4 - 2 excluded.
  EXPECT_EQ(att, 200u * 8u);
  EXPECT_EQ(acc, att);
}

TEST(Mala, SingleCoordinateStationarity) {
  // p = 1: the row is the main effect alone and the target is a logistic
  // likelihood times N(0, rho).
  const auto d = BinaryDataset::from_rows({{1}, {1}, {0}, {1}, {0}, {1}, {1}});
  const SpikeSlabHyper hyper{2.0, 0.5};
  auto dens = [&](double l) { return std::exp(5 * l - 7 * oracle::softplus(l) - l * l / 4.0); };
  const double z = oracle::integrate_line(dens);
  const double mean = oracle::integrate_line([&](double l) { return l * dens(l); }) / z;
  const double m2 = oracle::integrate_line([&](double l) { return l * l * dens(l); }) / z;

  SamplerConfig cfg = ab_config(1);
  cfg.sigma = 0.8;
  auto st = initial_ab_state(cfg, 1, 1);
  Rng rng(6);
  const std::size_t iters = 200000;
  double s = 0, s2 = 0;
  for (std::size_t t = 0; t < iters; ++t) {
    mala_step(st, 0, 0, d, hyper, rng);
    const double v = st.lambda[0].main[0];
    s += v;
    s2 += v * v;
  }
  EXPECT_NEAR(s / iters, mean, 0.02);
  EXPECT_NEAR(s2 / iters - (s / iters) * (s / iters), m2 - mean * mean, 0.03);
}

TEST(SpikeRefresh, OnlyExcludedCoordinatesAndVariance) {
  SamplerConfig cfg = ab_config(1);
  auto st = initial_ab_state(cfg, 3, 1);
  st.delta[0].bits = {1, 1, 1};
  st.lambda[0].inter = {0.3, -0.2, 0.7};
  Rng rng(1);
  const SpikeSlabHyper hyper{2.0, 0.25};
  spike_refresh(st, 0, 2, hyper, rng);
  EXPECT_EQ(st.lambda[0].inter, (std::vector<double>{0.3, -0.2, 0.7}));

  st.delta[0].bits = {1, 0, 1};
  double s = 0, s2 = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    spike_refresh(st, 0, 2, hyper, rng);
    const double v = st.lambda[0].interaction(2, 0);
    s += v;
    s2 += v * v;
    EXPECT_EQ(st.lambda[0].interaction(2, 1), 0.7);
  }
  const double var = s2 / n - (s / n) * (s / n);
  EXPECT_GE(var, 0.23);
  EXPECT_LE(var, 0.27);

  Rng a(8), b(8);
  auto s1 = st, s2b = st;
  spike_refresh(s1, 0, 2, hyper, a);
  spike_refresh(s2b, 0, 2, hyper, b);
  EXPECT_EQ(s1.lambda[0].inter, s2b.lambda[0].inter);
}

TEST(DeltaFlip, RatioAtZeroIsPriorOnly) {
  SamplerConfig cfg = ab_config(1);
  cfg.engine = Engine::abs;
  auto st = initial_ab_state(cfg, 3, 2);
  const SpikeSlabHyper hyper{2.0, 0.5};
  const double mrf = mrf_flip_delta(st.delta, st.coupling, 1, pair_index(2, 1));
  EXPECT_NEAR(delta_flip_log_ratio(st, 1, 2, 1, hyper), 0.5 * std::log(0.5 / 2.0) + mrf, 1e-14);
  // separate engines: one-edge conditional is just the Bernoulli(0.2) odds
  EXPECT_NEAR(mrf, logit(0.2), 1e-14);
  EXPECT_THROW(delta_flip_log_ratio(st, 0, 1, 1, hyper), DimensionError);
}

TEST(DeltaFlip, ForwardAndReverseRatiosCancel) {
  SamplerConfig cfg = ab_config(1);
  auto st = initial_ab_state(cfg, 4, 3);
  st.lambda[1].interaction(3, 1) = 0.9;
  st.delta[0].set(3, 1, true);
  const SpikeSlabHyper hyper{2.0, 0.5};
  const double fwd = delta_flip_log_ratio(st, 1, 3, 1, hyper);
  auto flipped = st;
  flipped.delta[1].set(3, 1, true);
  EXPECT_NEAR(delta_flip_log_ratio(flipped, 1, 3, 1, hyper), -fwd, 1e-13);
}

TEST(AbChain, NodeFactorisation) {
  // The quasi-posterior of a row depends only on that node's column and
  // its predecessors: shuffling later columns leaves it unchanged.
  std::mt19937_64 g(5);
  const auto d = make_data(30, 4, g);
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < d.rows(); ++i) rows.push_back({d(i, 0), d(i, 1), 1 - d(i, 2), d(i, 3)});
  const auto d2 = BinaryDataset::from_rows(rows);
  std::vector<double> row{0.2, -0.4};
  std::vector<std::uint8_t> drow{1};
  const SpikeSlabHyper hyper{2.0, 0.5};
  EXPECT_EQ(node_log_objective(row, drow, d, 1, hyper), node_log_objective(row, drow, d2, 1, hyper));
  EXPECT_EQ(quasi_grad(row, drow, d, 1, hyper), quasi_grad(row, drow, d2, 1, hyper));
}

TEST(AbChain, PpiEqualsSampleMean) {
  const auto data = scenario_data(5, 2, 60, 40);
  auto cfg = ab_config(600);
  Rng rng(1);
  const auto out = run_ab_chain(data, cfg, rng);
  const auto table = ppi(out);
  ASSERT_EQ(out.samples.size(), 601u);
  const std::size_t m = num_pairs(5);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t e = 0; e < m; ++e) {
      double s = 0;
      for (const auto& smp : out.samples)
        if (smp.iteration > cfg.burn_in) s += smp.delta[x * m + e];
      EXPECT_NEAR(table.values[x][e], s / (cfg.iterations - cfg.burn_in), 1e-14);
    }
}

TEST(AbChain, ZeroIterationsAndDeterminism) {
  const auto data = scenario_data(4, 2, 40, 50);
  auto cfg = ab_config(0);
  cfg.burn_in = 0;
  cfg.keep_lambda = true;
  Rng rng(1);
  const auto z = run_ab_chain(data, cfg, rng);
  ASSERT_EQ(z.samples.size(), 1u);
  for (double v : z.samples[0].lambda) EXPECT_EQ(v, 0.0);
  for (auto b : z.samples[0].delta) EXPECT_EQ(b, 0);

  cfg = ab_config(300);
  cfg.engine = Engine::abs;
  Rng r1(2), r2(2);
  const auto a = run_ab_chain(data, cfg, r1);
  const auto b = run_ab_chain(data, cfg, r2);
  EXPECT_EQ(a.inclusion_counts, b.inclusion_counts);
  EXPECT_EQ(a.acceptance.at("mala").accepted, b.acceptance.at("mala").accepted);
}

TEST(AbChain, DefaultStepIsSmallAndTuningHitsTheBand) {
  const auto data = scenario_data(6, 2, 100, 60);
  auto cfg = ab_config(2000);
  cfg.keep_samples = false;
  Rng r1(3);
  const auto plain = run_ab_chain(data, cfg, r1);
  EXPECT_GT(plain.acceptance.at("mala").rate(), 0.8);
  EXPECT_EQ(plain.final_sigma, 0.1);

  cfg.tune_sigma = true;
  cfg.burn_in = 1000;
  Rng r2(3);
  const auto tuned = run_ab_chain(data, cfg, r2);
  const double rate = tuned.acceptance.at("mala").rate();
  EXPECT_GE(rate, 0.2);
  EXPECT_LE(rate, 0.8);
  EXPECT_GT(tuned.final_sigma, 0.1);
}

TEST(AbChain, PriorDrawSpikeUpdateRuns) {
  const auto data = scenario_data(4, 2, 50, 70);
  auto cfg = ab_config(200);
  cfg.spike_update = SpikeUpdate::prior_draw;
  Rng rng(4);
  const auto out = run_ab_chain(data, cfg, rng);
  EXPECT_EQ(out.samples.size(), 201u);
  EXPECT_GT(out.acceptance.at("delta_flip").attempted, 0u);
}

TEST(AbChain, TrueEdgesOutrankNullEdges) {
  Scenario sc;
  const auto data = scenario_data(6, 2, 150, 80, &sc);
  auto cfg = ab_config(4000);
  cfg.keep_samples = false;
  Rng rng(5);
  const auto table = ppi(run_ab_chain(data, cfg, rng));
  double t = 0, f = 0;
  int nt = 0, nf = 0;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t e = 0; e < num_pairs(6); ++e)
      (sc.graphs[x].bits[e] ? (++nt, t) : (++nf, f)) += table.values[x][e];
  EXPECT_GT(t / nt, f / nf);
}

TEST(AbChain, RejectsExactEngine) {
  const auto data = scenario_data(3, 2, 20, 90);
  Rng rng(1);
  auto cfg = ab_config(10);
  cfg.engine = Engine::fb;
  EXPECT_THROW(run_ab_chain(data, cfg, rng), ConfigError);
}
