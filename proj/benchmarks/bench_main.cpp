#include <benchmark/benchmark.h>

#include "tailcens/bridge.hpp"
#include "tailcens/censoring.hpp"
#include "tailcens/estimators.hpp"
#include "tailcens/limit_functional.hpp"

namespace {

using namespace tailcens;

const CensoringSetup kSetup{TailModel{Family::frechet, 0.6, 1.0, 0.0},
                            TailModel{Family::frechet, 0.9, 1.0, 0.0}};

void BM_sample_censored(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_censored(kSetup, n, seed++));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_sample_censored)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_sort_and_fit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const CensoredSample sample = sample_censored(kSetup, n, 7);
  for (auto _ : state) {
    const SortedSample sorted = sort_with_concomitants(sample);
    benchmark::DoNotOptimize(asymptotic_ci(sorted, n / 10));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_sort_and_fit)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_bridge_functional(benchmark::State& state) {
  LimitParams prm;
  prm.gamma1 = 0.6;
  prm.p = 0.6;
  prm.theta = 0.6;
  prm.t0 = 0.005;
  prm.grid_size = static_cast<std::size_t>(state.range(0));
  const auto points = required_points(prm);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const BridgePath path = simulate_bridge(points, seed++);
    benchmark::DoNotOptimize(functional_gamma(path, prm));
  }
}
BENCHMARK(BM_bridge_functional)->Arg(128)->Arg(512)->Arg(1024);

void BM_exact_functional_variance(benchmark::State& state) {
  LimitParams prm;
  prm.gamma1 = 0.6;
  prm.p = 0.6;
  prm.theta = 0.6;
  prm.t0 = 0.005;
  prm.grid_size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(functional_gamma_variance(prm));
}
BENCHMARK(BM_exact_functional_variance)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
