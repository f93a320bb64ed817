#include <benchmark/benchmark.h>

#include <utility>

#include "entwalk/classical.hpp"
#include "entwalk/metrics.hpp"
#include "entwalk/spectral.hpp"
#include "entwalk/walk.hpp"

using namespace entwalk;

namespace {

void BM_EvolveFiftySteps(benchmark::State& state) {
  const WalkConfig config = WalkConfig::standard(static_cast<int>(state.range(0)), 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(config));
  }
}

// Same coin entries twice: once through the transform path, once as a plain
// dense matrix product.
void BM_CoinApplication(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool dense = state.range(1) != 0;
  const CoinOperator fast = build_coin(n);
  const CoinOperator coin = dense ? build_coin(n, CoinSpec::custom(fast.matrix)) : fast;
  const StateVector prepared = evolve(WalkConfig::standard(n, 50));
  for (auto _ : state) {
    StateVector work = prepared;
    work = apply_coin(std::move(work), coin);
    benchmark::DoNotOptimize(work.amplitudes.data());
  }
}

void BM_MetricsSeries(benchmark::State& state) {
  const WalkConfig config = WalkConfig::standard(static_cast<int>(state.range(0)), 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics_series(config));
  }
}

void BM_SpectralEvolve(benchmark::State& state) {
  const WalkConfig config = WalkConfig::standard(static_cast<int>(state.range(0)), 30);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_evolve(config));
  }
}

void BM_ClosedFormScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MomentumGrid grid = MomentumGrid::with_points(256);
  for (auto _ : state) {
    for (int j = 0; j < grid.num_points; ++j) {
      benchmark::DoNotOptimize(closed_form_eigensystem(n, grid.point(j)));
    }
  }
}

void BM_ClassicalWalk(benchmark::State& state) {
  const ClassicalWalkConfig config{static_cast<int>(state.range(0)), 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical_distribution(config));
  }
}

BENCHMARK(BM_EvolveFiftySteps)->Arg(2)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoinApplication)
    ->ArgsProduct({{5, 7}, {0, 1}})
    ->ArgNames({"n", "dense"})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MetricsSeries)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralEvolve)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedFormScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalWalk)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
