#include <benchmark/benchmark.h>

#include <cmath>

#include "fgx/expansion.hpp"
#include "fgx/frame_calculus.hpp"
#include "fgx/grid_calculus.hpp"
#include "fgx/indicial_families.hpp"
#include "fgx/modes.hpp"

namespace {

using namespace fgx;

SpatialMetric curved_g0(const ChartPtr& chart, double amp) {
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 1, 1, {1, 0, 0}, amp, 0.3);
  push_sym_mode(modes, 0, 2, {2, 0, 0}, amp / 2, 1.1);
  return SpatialMetric{sym2_from_modes(chart, modes, true)};
}

void BM_spectral_derivative(benchmark::State& state) {
  const ChartPtr chart = Chart::make(3, {32, 32, 1});
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 1, 1, {2, 1, 0}, 0.1, 0.7);
  const SpatialField f = sym2_from_modes(chart, modes, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_derivative(f, 1));
  }
}
BENCHMARK(BM_spectral_derivative);

void BM_spatial_ricci(benchmark::State& state) {
  const ChartPtr chart = Chart::make(3, {32, 32, 1});
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 1, 1, {1, 1, 0}, 0.05, 0.7);
  const SpatialMetric g{sym2_from_modes(chart, modes, true)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ricci(g));
  }
}
BENCHMARK(BM_spatial_ricci);

void BM_einstein_residual_series(benchmark::State& state) {
  const int cap = static_cast<int>(state.range(0));
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  BlockMetricSeries g = BlockMetricSeries::fg_form(cap, curved_g0(chart, 0.02).g());
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 0, 1, {1, 0, 0}, 0.01, 0.2);
  g.add_spatial_term(2, 0, sym2_from_modes(chart, modes, false));
  for (auto _ : state) {
    benchmark::DoNotOptimize(einstein_residual(g, 3));
  }
}
BENCHMARK(BM_einstein_residual_series)->Arg(4)->Arg(6)->Arg(8);

void BM_expand_curved(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  // 32 points keep the nonlinear curvature harmonics of the k <= 2 data
  // resolved through order 8.
  const ChartPtr chart = Chart::make(3, {32, 1, 1});
  const SpatialMetric g0 = curved_g0(chart, 0.02);
  for (auto _ : state) {
    const BoundaryData data{3, N, g0, SpatialField(chart, 2), {}};
    benchmark::DoNotOptimize(expand(data));
  }
}
BENCHMARK(BM_expand_curved)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_indicial_roots(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(indicial_roots(n));
  }
}
BENCHMARK(BM_indicial_roots)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
