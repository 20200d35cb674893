#include <benchmark/benchmark.h>

#include "countdiag/asymptotics.hpp"
#include "countdiag/core_model.hpp"
#include "countdiag/diagnostics.hpp"
#include "countdiag/harness.hpp"

namespace {

using namespace countdiag;

void BM_SimulatePoiInar1(benchmark::State& state) {
  RandomStream rng(Seed{1, 0});
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_poi_inar1(PoiInar1{3.0, 0.5}, T, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePoiInar1)->Arg(100)->Arg(1000);

void BM_SimulateBar1(benchmark::State& state) {
  RandomStream rng(Seed{2, 0});
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_bar1(Bar1{25, 0.12, 0.5}, T, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBar1)->Arg(100)->Arg(1000);

void BM_TestIndex(benchmark::State& state) {
  RandomStream rng(Seed{3, 0});
  const auto x = simulate_poi_inar1(PoiInar1{3.0, 0.5}, 1000, rng);
  const auto s = apply_mask(x, simulate_markov_mask(MissingSpec{0.8, 0.3}, 1000, rng));
  for (auto _ : state) benchmark::DoNotOptimize(test_index(s, NullSpec{}, IndexKind::PoiDispersion));
}
BENCHMARK(BM_TestIndex);

void BM_SkewAsymGeneralExact(benchmark::State& state) {
  const auto oracle = bar1_oracle(10, 0.3, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(skew_asym_general(oracle, MarkovMask{0.6, 0.3}, 100, IndexKind::SkewBin));
}
BENCHMARK(BM_SkewAsymGeneralExact);

void BM_SkewAsymGeneralSeries(benchmark::State& state) {
  const auto oracle = bar1_oracle(10, 0.3, 0.5).series_only();
  const auto mask = as_sequence(MarkovMask{0.6, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(skew_asym_general(oracle, mask, 100, IndexKind::SkewBin));
}
BENCHMARK(BM_SkewAsymGeneralSeries);

void BM_RunScenario(benchmark::State& state) {
  Scenario s;
  s.model = PoiInar1{3.0, 0.5};
  s.missing = MissingSpec{0.6, 0.3};
  s.T = 250;
  s.indices = default_indices(s.model);
  s.replications = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s, RunOptions{1, 256}));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
