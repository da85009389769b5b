#include <benchmark/benchmark.h>

#include "morphoseek/cost.hpp"
#include "morphoseek/kernel.hpp"
#include "morphoseek/relation.hpp"
#include "morphoseek/search.hpp"

using namespace morphoseek;

namespace {

StateVector bench_state(const GridDims& dims) {
  Rng rng(1234);
  return random_state(dims, SamplingRanges{}, rng);
}

void BM_EnergyCyclic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StateVector s = bench_state({3, n, n});
  for (auto _ : state) benchmark::DoNotOptimize(energy_cyclic(s));
}

void BM_EnergyNonCyclic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StateVector s = bench_state({3, n, n});
  for (auto _ : state) benchmark::DoNotOptimize(energy_noncyclic(s));
}

void BM_ApplyDiagonal(benchmark::State& state) {
  const GridDims dims{3, 16, 16};
  const std::vector<double> flat = flatten(bench_state(dims));
  const AffineRelation rel = identity(dims, Space::DiagonalAffine);
  for (auto _ : state) benchmark::DoNotOptimize(apply(rel, flat));
}

void BM_ApplyDense(benchmark::State& state) {
  const GridDims dims{2, 4, 4};
  const std::vector<double> flat = flatten(bench_state(dims));
  const AffineRelation rel = identity(dims, Space::DenseAffine);
  for (auto _ : state) benchmark::DoNotOptimize(apply(rel, flat));
}

void BM_ApplyPermScale(benchmark::State& state) {
  const GridDims dims{3, 16, 16};
  const std::vector<double> flat = flatten(bench_state(dims));
  const AffineRelation rel = translate(dims, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply(rel, flat));
}

void BM_CostSingle(benchmark::State& state) {
  const GridDims dims{2, 4, 4};
  const StateVector x = bench_state(dims);
  const std::vector<AffineRelation> priors{identity(dims)};
  const AffineRelation candidate = negate_ssh(dims);
  const EnergyFn f = &energy_cyclic;
  for (auto _ : state) benchmark::DoNotOptimize(cost_single(candidate, priors, x, f));
}

void BM_MinimizeBurst(benchmark::State& state) {
  SearchConfig config;
  config.dims = {2, 4, 4};
  config.max_iterations = 1000;
  config.seed = 99;
  const std::vector<AffineRelation> priors{identity(config.dims)};
  const EnergyFn f = &energy_cyclic;
  for (auto _ : state) {
    Rng rng(config.seed);
    benchmark::DoNotOptimize(minimize(f, priors, config, rng));
  }
}

}  // namespace

BENCHMARK(BM_EnergyCyclic)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EnergyNonCyclic)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplyDiagonal);
BENCHMARK(BM_ApplyDense);
BENCHMARK(BM_ApplyPermScale);
BENCHMARK(BM_CostSingle)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MinimizeBurst)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
