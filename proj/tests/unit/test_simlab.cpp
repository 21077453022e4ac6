#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "multising/simlab.hpp"
#include "oracles.hpp"

using namespace multising;

namespace {

bool connected(const EdgeIndicators& g) {
  std::vector<std::size_t> comp(g.p);
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (comp[a] != a) a = comp[a];
    return a;
  };
  for (std::size_t e = 0; e < g.size(); ++e)
    if (g.bits[e]) {
      const auto pr = pair_at(e);
      comp[find(pr.r)] = find(pr.j);
    }
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < g.p; ++v) roots.insert(find(v));
  return roots.size() == 1;
}

std::size_t max_degree(const EdgeIndicators& g) {
  std::vector<std::size_t> deg(g.p, 0);
  for (std::size_t e = 0; e < g.size(); ++e)
    if (g.bits[e]) {
      const auto pr = pair_at(e);
      ++deg[pr.r];
      ++deg[pr.j];
    }
  return *std::max_element(deg.begin(), deg.end());
}

}  // namespace

TEST(BarabasiAlbert, SmallCasesAreTrees) {
  Rng rng(1);
  const auto two = barabasi_albert(2, 1, rng);
  EXPECT_EQ(two.edge_count(), 1u);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = barabasi_albert(10, 1, rng);
    EXPECT_EQ(g.edge_count(), 9u);
    EXPECT_TRUE(connected(g));
  }
}

TEST(BarabasiAlbert, EdgeCountForLargerM) {
  Rng rng(2);
  for (std::size_t m : {2u, 3u})
    for (int rep = 0; rep < 10; ++rep) EXPECT_EQ(barabasi_albert(12, m, rng).edge_count(), m * (12 - m));
  EXPECT_THROW(barabasi_albert(1, 1, rng), ConfigError);
  EXPECT_THROW(barabasi_albert(5, 0, rng), ConfigError);
  EXPECT_THROW(barabasi_albert(5, 5, rng), ConfigError);
}

TEST(BarabasiAlbert, HubsHeavierThanUniformAttachment) {
  Rng rng(3);
  std::mt19937_64 base(4);
  const std::size_t p = 50;
  double ba = 0, uni = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    ba += max_degree(barabasi_albert(p, 1, rng));
    // Uniform recursive tree: each new node picks an existing node uniformly.
    EdgeIndicators g(p);
    for (std::size_t t = 1; t < p; ++t) g.set(t, std::uniform_int_distribution<std::size_t>(0, t - 1)(base), true);
    uni += max_degree(g);
  }
  EXPECT_GT(ba / 1000, uni / 1000);
}

TEST(BuildScenario, SharingPatterns) {
  Rng rng(5);
  const auto a = build_scenario(ScenarioKind::A, 10, 4, rng);
  for (std::size_t x = 1; x < 4; ++x) EXPECT_EQ(a.graphs[x], a.graphs[0]);

  const auto b = build_scenario(ScenarioKind::B, 10, 4, rng);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t h = x + 1; h < 4; ++h) EXPECT_NE(b.graphs[x], b.graphs[h]);

  const auto c = build_scenario(ScenarioKind::C, 10, 4, rng);
  EXPECT_EQ(c.graphs[0], c.graphs[1]);
  EXPECT_EQ(c.graphs[2], c.graphs[3]);
  EXPECT_NE(c.graphs[0], c.graphs[2]);

  const auto d = build_scenario(ScenarioKind::D, 10, 4, rng);
  EXPECT_EQ(d.graphs[0], d.graphs[1]);
  EXPECT_EQ(d.graphs[1], d.graphs[2]);
  EXPECT_NE(d.graphs[3], d.graphs[0]);

  EXPECT_THROW(build_scenario(ScenarioKind::C, 10, 3, rng), ConfigError);
  EXPECT_THROW(build_scenario(ScenarioKind::A, 10, 1, rng), ConfigError);
  // Only one labelled tree on two nodes: B cannot find distinct graphs.
  EXPECT_THROW(build_scenario(ScenarioKind::B, 2, 2, rng), ConfigError);
}

TEST(BuildScenario, Deterministic) {
  Rng r1(7), r2(7);
  const auto a = build_scenario(ScenarioKind::B, 8, 3, r1);
  const auto b = build_scenario(ScenarioKind::B, 8, 3, r2);
  EXPECT_EQ(a.graphs, b.graphs);
  EXPECT_EQ(a.params, b.params);
}

TEST(GraphsToParams, DefaultsAndRoundTrip) {
  EdgeIndicators g(4);
  g.set(2, 0, true);
  g.set(3, 1, true);
  const auto params = graphs_to_params({g, EdgeIndicators(4)});
  for (std::size_t x = 0; x < 2; ++x)
    for (double v : params[x].main) EXPECT_EQ(v, -1.0);
  EXPECT_EQ(params[0].interaction(2, 0), 1.5);
  EXPECT_EQ(params[0].interaction(3, 1), 1.5);
  EXPECT_EQ(params[0].interaction(1, 0), 0.0);
  for (double v : params[1].inter) EXPECT_EQ(v, 0.0);

  const auto custom = graphs_to_params({g}, -0.3, 0.9);
  EXPECT_EQ(custom[0].main[3], -0.3);
  EXPECT_EQ(custom[0].interaction(3, 1), 0.9);

  EdgeIndicators back(4);
  for (std::size_t e = 0; e < back.size(); ++e) back.bits[e] = std::abs(custom[0].inter[e]) > 0;
  EXPECT_EQ(back, g);
}

TEST(SimulateDataset, ZeroParamsAreFair) {
  Scenario sc;
  sc.p = 4;
  sc.q = 2;
  sc.graphs.assign(2, EdgeIndicators(4));
  sc.params.assign(2, CanonicalParams(4));
  const auto d = simulate_dataset(sc, 20000, 100, 1, 9ULL);
  for (const auto& grp : d.groups)
    for (std::size_t r = 0; r < 4; ++r) {
      double m = 0;
      for (std::size_t i = 0; i < grp.rows(); ++i) m += grp(i, r);
      EXPECT_NEAR(m / grp.rows(), 0.5, 0.015);
    }
}

TEST(SimulateDataset, ScenarioCellFrequencies) {
  Rng rng(11);
  const auto sc = build_scenario(ScenarioKind::A, 3, 2, rng);
  const auto d = simulate_dataset(sc, 50000, 1000, 10, 12ULL);
  const auto want = oracle::cell_probs(sc.params[0]);
  for (const auto& grp : d.groups) {
    std::vector<double> freq(8, 0.0);
    for (std::size_t i = 0; i < grp.rows(); ++i) freq[oracle::row_cell(grp, i)] += 1.0 / grp.rows();
    double tv = 0;
    for (int c = 0; c < 8; ++c) tv += 0.5 * std::abs(freq[c] - want[c]);
    EXPECT_LT(tv, 0.03);
  }
}

TEST(SimulateDataset, SeedsAndGroupIndependence) {
  Rng rng(13);
  const auto sc = build_scenario(ScenarioKind::B, 5, 3, rng);
  EXPECT_EQ(simulate_dataset(sc, 50, 100, 2, 4ULL).groups, simulate_dataset(sc, 50, 100, 2, 4ULL).groups);

  auto swapped = sc;
  std::swap(swapped.graphs[0], swapped.graphs[2]);
  std::swap(swapped.params[0], swapped.params[2]);
  const auto a = simulate_dataset(sc, 40, 50, 1, std::vector<std::uint64_t>{1, 2, 3});
  const auto b = simulate_dataset(swapped, 40, 50, 1, std::vector<std::uint64_t>{3, 2, 1});
  EXPECT_EQ(a.groups[0].cells(), b.groups[2].cells());
  EXPECT_EQ(a.groups[1].cells(), b.groups[1].cells());
  EXPECT_EQ(a.groups[2].cells(), b.groups[0].cells());
  EXPECT_THROW(simulate_dataset(sc, 40, 50, 1, std::vector<std::uint64_t>{1}), ConfigError);
}

TEST(MeanSe, Arithmetic) {
  const auto [m, se] = mean_se({1.0, 2.0, 3.0, 6.0});
  EXPECT_DOUBLE_EQ(m, 3.0);
  EXPECT_NEAR(se, std::sqrt(14.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(mean_se({4.0}).second, 0.0);
}

TEST(Study, SeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (auto s : {ScenarioKind::A, ScenarioKind::B})
    for (std::size_t r = 0; r < 5; ++r) {
      seen.insert(replicate_data_seed(1, s, r));
      for (auto m : {Engine::fb, Engine::ab, Engine::fbs, Engine::abs}) seen.insert(replicate_chain_seed(1, s, r, m));
    }
  EXPECT_EQ(seen.size(), 2u * 5u * 5u);
}

TEST(Study, EasyInstanceIsRecovered) {
  StudyConfig cfg;
  cfg.p = 4;
  cfg.q = 2;
  cfg.replicates = 2;
  cfg.n_per_group = 800;
  cfg.scenario.interaction = 2.5;
  cfg.methods = {Engine::fb, Engine::ab, Engine::fbs, Engine::abs};
  cfg.sampler.iterations = 1000;
  cfg.sampler.burn_in = 300;
  cfg.sampler.keep_samples = false;
  const auto rep = replicate_study(cfg);
  ASSERT_EQ(rep.cells.size(), 4u);
  for (const auto& c : rep.cells) {
    EXPECT_GT(c.mean_mcc, 0.9) << to_string(c.method);
    EXPECT_GE(c.se_mcc, 0.0);
    EXPECT_EQ(c.runs.size(), 2u);
  }
  const auto again = replicate_study(cfg);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(again.cells[k].mean_mcc, rep.cells[k].mean_mcc);
    EXPECT_EQ(again.cells[k].se_f1, rep.cells[k].se_f1);
  }
}

TEST(Study, Validation) {
  StudyConfig cfg;
  cfg.replicates = 0;
  EXPECT_THROW(replicate_study(cfg), ConfigError);
  cfg.replicates = 2;
  cfg.p = 25;
  cfg.methods = {Engine::fb};
  EXPECT_THROW(replicate_study(cfg), ConfigError);
}
