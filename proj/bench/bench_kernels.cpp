// Serial reference vs OpenMP variant of the heavier kernels.
// Run with --benchmark_filter=... to pick a kernel; the second argument of
// each benchmark is 0 for serial and 1 for parallel.

#include <benchmark/benchmark.h>

#include <cmath>

#include "vortex/commands.hpp"
#include "vortex/grid.hpp"
#include "vortex/mode_projection.hpp"
#include "vortex/oam_modes.hpp"
#include "vortex/quadrature.hpp"

namespace {

using namespace vortex;

Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Exec::serial : Exec::parallel;
}

void BM_SampleGrid(benchmark::State& state) {
  const LgModeSpec spec{1, 2, 1e-3};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto grid = sample_mode_grid(spec, 3e-3, n, exec_of(state));
    benchmark::DoNotOptimize(grid.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SampleGrid)->ArgsProduct({{129, 513}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Hermite3d(benchmark::State& state) {
  const CondensateModeSpec spec;
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto v = mode_overlap([&](const Vec3& r) { return psi_v(r, spec); },
                                [&](const Vec3& r) { return psi_v(r, spec); }, spec, order,
                                exec_of(state));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Hermite3d)->ArgsProduct({{32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  RunConfig config;
  config.sweep.parameter = "delta0";
  config.sweep.values.clear();
  for (int k = 0; k < state.range(0); ++k) config.sweep.values.push_back(2000.0 + 100.0 * k);
  for (auto _ : state) {
    auto rows = run_sweep(config, exec_of(state));
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(BM_Sweep)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
