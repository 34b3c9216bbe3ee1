#include <benchmark/benchmark.h>

#include "bpp/datasets.hpp"
#include "bpp/experiments.hpp"
#include "bpp/ising.hpp"
#include "bpp/sst_models.hpp"
#include "bpp/strategies.hpp"
#include "bpp/uniqueness.hpp"

using namespace bpp;

static void BM_ExactJoint(benchmark::State& state) {
  const auto m = IsingModel::uniform(cycle_graph(static_cast<std::size_t>(state.range(0))), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_joint(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactJoint)->DenseRange(8, 20, 4);

static void BM_GlauberSweep(benchmark::State& state) {
  const auto m = IsingModel::uniform(random_cycle_graph(static_cast<std::size_t>(state.range(0)), 1), 0.2);
  GlauberChain chain(m, 2);
  for (auto _ : state) {
    chain.sweep();
    benchmark::DoNotOptimize(chain.state().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GlauberSweep)->Arg(200)->Arg(2000);

static void BM_MallowsSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Ranking ref = Ranking::identity(n);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mallows_ranking(1.0, ref, rng));
}
BENCHMARK(BM_MallowsSample)->Arg(10)->Arg(100);

static void BM_ExperimentComparison(benchmark::State& state) {
  const auto data = synthetic_mallows_dataset(2.0, 250, 10, 4);
  ComparisonOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(experiment_comparison(data, Setting::Truth, opt));
}
BENCHMARK(BM_ExperimentComparison)->Unit(benchmark::kMillisecond);

static void BM_EquilibriumGrid(benchmark::State& state) {
  const auto p = witness_p2(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(classify_symmetric_equilibria(p, 101));
}
BENCHMARK(BM_EquilibriumGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
