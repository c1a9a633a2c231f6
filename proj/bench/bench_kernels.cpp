// Serial reference against the OpenMP kernels. Arguments: grid size, then 0 for serial or
// 1 for parallel.

#include <benchmark/benchmark.h>

#include <array>
#include <random>
#include <vector>

#include "wavelab/kernels.hpp"

using namespace wavelab::kernels;

namespace {

struct Fields {
  std::array<std::vector<double>, 2> cur, prev, next, ut;

  explicit Fields(std::size_t size) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int j = 0; j < 2; ++j) {
      cur[j].resize(size);
      prev[j].resize(size);
      next[j].assign(size, 0.0);
      ut[j].assign(size, 0.0);
      for (std::size_t i = 0; i < size; ++i) {
        cur[j][i] = U(rng);
        prev[j][i] = cur[j][i] + 0.01 * U(rng);
      }
    }
  }

  StepBuffers view() { return {{cur[0], cur[1]}, {prev[0], prev[1]}, {next[0], next[1]}, {ut[0], ut[1]}}; }
};

void BM_CartesianStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool parallel = state.range(1) != 0;
  const double h = 1.0 / n;
  Fields f(static_cast<std::size_t>(n) * n);
  const StepBuffers b = f.view();
  for (auto _ : state) {
    if (parallel)
      leapfrog_cartesian_parallel(n, h, 0.4 * h, true, b);
    else
      leapfrog_cartesian_serial(n, h, 0.4 * h, true, b);
    benchmark::DoNotOptimize(f.next[0].data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_CartesianStep)->ArgsProduct({{257, 1025, 2049}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_RadialStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool parallel = state.range(1) != 0;
  const double h = 1.0 / 128;
  std::vector<double> outer(n), inner(n);
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    outer[i] = (r + 0.5 * h) / (r * h * h);
    inner[i] = (r - 0.5 * h) / (r * h * h);
  }
  Fields f(n);
  const StepBuffers b = f.view();
  for (auto _ : state) {
    if (parallel)
      leapfrog_radial_parallel(outer, inner, 0.45 * h, true, b);
    else
      leapfrog_radial_serial(outer, inner, 0.45 * h, true, b);
    benchmark::DoNotOptimize(f.next[0].data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RadialStep)->ArgsProduct({{8192, 65536}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_CartesianEnergy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Exec exec = state.range(1) != 0 ? Exec::parallel : Exec::serial;
  Fields f(static_cast<std::size_t>(n) * n);
  for (auto _ : state) {
    const EnergySums e = energy_cartesian(exec, n, 1.0 / n, {f.cur[0], f.cur[1]}, {f.prev[0], f.prev[1]});
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_CartesianEnergy)->ArgsProduct({{1025, 2049}, {0, 1}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
