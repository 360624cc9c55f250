#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "arcfreq/config.hpp"
#include "arcfreq/eigensolve.hpp"
#include "arcfreq/sweep.hpp"

using namespace arcfreq;

namespace {

DimensionlessProblem cracked_arch() {
  std::size_t idx = 0;
  const ArchGeometry g =
      ArchGeometry::uniform(110e-9, 1e-9, std::numbers::pi / 6, 5e-9).with_interface(0.4 * std::numbers::pi / 6, &idx);
  return build_problem(Material{}, g, {{idx, 0.5}}, BoundaryType::ClampedFree);
}

void sample(benchmark::State& state, Execution exec) {
  const DimensionlessProblem p = cracked_arch();
  std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.5 + 0.25 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(sample_determinant(p, grid, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleSerial(benchmark::State& state) { sample(state, Execution::Serial); }
void BM_SampleParallel(benchmark::State& state) { sample(state, Execution::Parallel); }
BENCHMARK(BM_SampleSerial)->Arg(2000)->Arg(20000);
BENCHMARK(BM_SampleParallel)->Arg(2000)->Arg(20000);

void sweep(benchmark::State& state, Execution exec) {
  const cli::Config cfg = cli::parse_config(R"({
    "cracks": [{"location": 0.4, "depth_ratio": 0.5}],
    "sweeps": [{"name": "s", "parameter": "crack_depth_s", "values": {"from": 0, "to": 0.7, "step": 0.05}, "modes": 3}]
  })");
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_sweep(cfg.scenario, cfg.sweeps[0], exec));
}

void BM_SweepSerial(benchmark::State& state) { sweep(state, Execution::Serial); }
void BM_SweepParallel(benchmark::State& state) { sweep(state, Execution::Parallel); }
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
