#include <benchmark/benchmark.h>

#include <omp.h>

#include "framedvs/schedulability.hpp"
#include "framedvs/simulator.hpp"
#include "framedvs/strategies.hpp"

using namespace framedvs;

namespace {

FrameSystem xscale_like(std::size_t n_tasks) {
  FrequencyTable cpu({150e6, 400e6, 600e6, 800e6, 1000e6}, {0.08, 0.17, 0.4, 0.9, 1.6});
  std::vector<TaskSpec> tasks;
  for (std::size_t i = 0; i < n_tasks; ++i)
    tasks.push_back({4'000'000, CycleDistribution::uniform(500'000, 4'000'000), "t" + std::to_string(i)});
  return FrameSystem(std::move(tasks), 0.03 * static_cast<double>(n_tasks), std::move(cpu));
}

struct Fixture {
  FrameSystem sys = xscale_like(8);
  StrategySet strategy = build_limit(sys, danger_zones(sys));
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_Serial(benchmark::State& state) {
  const auto& fx = fixture();
  SimOptions opts{static_cast<std::size_t>(state.range(0)), 7, false};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_serial(fx.sys, fx.strategy, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto& fx = fixture();
  SimOptions opts{static_cast<std::size_t>(state.range(0)), 7, false};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(fx.sys, fx.strategy, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
