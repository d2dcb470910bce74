// Serial reference against the OpenMP path for the parallel kernels.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bioassay/birth_death.hpp"
#include "bioassay/efficiency.hpp"
#include "bioassay/fisher.hpp"

using namespace bioassay;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_TotalInfo(benchmark::State& state) {
  const ModelDef& m = find_model("weibull-reconstructed");
  const ParamVector theta{2.0, 0.5, 1.2, 1.7};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::vector<double> design(static_cast<std::size_t>(state.range(1)));
  for (auto& x : design) x = u(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_info(m, design, theta, 1.0, mode(state)).entries(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_LogitOmission(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(omission_study(2000, {0.0, 1.0, 1.0}, 0.3, 32, 7, mode(state)).size());
  }
}

void BM_LinearOmission(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_omission_study(5000, {0.3, 0.6}, 32, 7, mode(state)).size());
  }
}

void BM_BirthDeath(benchmark::State& state) {
  const BirthDeathSpec spec{1.0, 1.0, 10, 5.0, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_replicates(spec, 2000, std::nullopt, mode(state)).size());
  }
}

}  // namespace

BENCHMARK(BM_TotalInfo)->ArgsProduct({{0, 1}, {1000, 100000}})->ArgNames({"parallel", "points"});
BENCHMARK(BM_LogitOmission)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinearOmission)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BirthDeath)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
