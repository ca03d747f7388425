// Serial reference loops against their OpenMP counterparts. The second
// argument of every benchmark selects the execution: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "wdro/experiments.hpp"
#include "wdro/unrestricted.hpp"
#include "wdro/worst_case.hpp"

namespace {

using namespace wdro;

Execution execution_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::kSerial : Execution::kParallel;
}

struct Fixture {
  GeneratedInstance instance;
  EmpiricalDistribution sample;
  FeasibleSet problem;
  Binary x;

  Fixture(int n, int N)
      : instance(generate_instance(n, 42)),
        sample(sample_costs(instance, N, 43)),
        problem(encode(instance.knapsack)),
        x(solve_cvar(problem, sample, 0.5).x) {}
};

void BM_WorstDistribution(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Fixture f(30, N);
  const RiskSpec risk(0.25, N);
  AdversaryOptions options;
  options.execution = execution_of(state);
  options.enumeration_limit = binomial(N, risk.l());
  const AmbiguitySpec spec = AmbiguitySpec::make(0.05, Norm::kLInf);
  for (auto _ : state) {
    benchmark::DoNotOptimize(worst_distribution(f.x, f.sample, f.instance.support(), spec, risk, options).value);
  }
  state.counters["subsets"] = static_cast<double>(binomial(N, risk.l()));
}
BENCHMARK(BM_WorstDistribution)->ArgsProduct({{12, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_EstimateQuantile(benchmark::State& state) {
  const Fixture f(100, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_quantile(f.x, f.instance, 0.9, state.range(0), 7, execution_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateQuantile)->ArgsProduct({{20000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_LambdaFamily(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 10);
  const AmbiguitySpec spec = AmbiguitySpec::make(0.1, Norm::kL2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lambda_family(f.problem, f.sample, spec, 0.3, 1e-9, execution_of(state)).best);
  }
}
BENCHMARK(BM_LambdaFamily)->ArgsProduct({{12, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  ExperimentConfig config = default_config(ExperimentKind::kExp2);
  config.n = 20;
  config.N = 8;
  config.samples = 4;
  config.mc_draws = 5000;
  config.epsilons = arithmetic_grid(0.05, 4);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config, execution_of(state)).records.size());
}
BENCHMARK(BM_Sweep)->Args({0, 0})->Args({0, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
