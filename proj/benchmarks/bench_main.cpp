#include <benchmark/benchmark.h>

#include "multising/ab_engine.hpp"
#include "multising/fb_engine.hpp"
#include "multising/ising.hpp"
#include "multising/laplace.hpp"
#include "multising/simlab.hpp"

using namespace multising;

namespace {

GroupedData scenario_data(std::size_t p, std::size_t q) {
  Rng rng(5);
  const auto sc = build_scenario(ScenarioKind::A, p, q, rng);
  return simulate_dataset(sc, 100, 1000, 10, 11ULL);
}

}  // namespace

static void BM_LogPsi(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  CanonicalParams lam(p);
  for (std::size_t e = 0; e < lam.inter.size(); ++e) lam.inter[e] = 0.01 * double(e % 7);
  for (auto _ : state) benchmark::DoNotOptimize(log_psi(lam));
  state.SetComplexityN(1 << p);
}
BENCHMARK(BM_LogPsi)->DenseRange(4, 16, 4)->Complexity(benchmark::oN);

static void BM_Laplace(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto hyper = default_dy_hyper(p, 0.02);
  EdgeIndicators delta(p);
  for (std::size_t e = 0; e < delta.size(); e += 3) delta.bits[e] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(laplace_log_normconst(hyper.s, hyper.g, delta));
}
BENCHMARK(BM_Laplace)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_FbIteration(benchmark::State& state) {
  const auto data = scenario_data(10, 4);
  SamplerConfig cfg;
  cfg.engine = Engine::fb;
  cfg.keep_samples = false;
  FbModel model(data, cfg);
  auto st = initial_fb_state(model, cfg);
  Rng rng(1);
  for (auto _ : state)
    for (std::size_t x = 0; x < model.q(); ++x) fb_graph_step(st, x, model, rng);
}
BENCHMARK(BM_FbIteration)->Unit(benchmark::kMicrosecond);

static void BM_AbIteration(benchmark::State& state) {
  const auto data = scenario_data(10, 4);
  SamplerConfig cfg;
  cfg.engine = Engine::ab;
  const auto rc = cfg.resolved(10);
  const SpikeSlabHyper hyper{*rc.rho, *rc.gamma};
  auto st = initial_ab_state(rc, 10, 4);
  Rng rng(1);
  for (auto _ : state)
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t r = 0; r < 10; ++r) {
        mala_step(st, x, r, data.groups[x], hyper, rng, true);
        for (std::size_t j = 0; j < r; ++j) delta_flip_step(st, x, r, j, hyper, rng);
      }
}
BENCHMARK(BM_AbIteration)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
