#include <benchmark/benchmark.h>

#include "slopelab/conformal.hpp"
#include "slopelab/dynamics.hpp"
#include "slopelab/fixtures.hpp"
#include "slopelab/geometry.hpp"

using namespace slopelab;

namespace {

const staircase::StaircasePolygon& comb() {
  static const auto poly =
      staircase::realize(fixtures::symmetric_comb_params(), 16.0);
  return poly;
}

const conformal::ConformalMap& comb_map() {
  static const auto map = conformal::build_map(comb(), 1000);
  return map;
}

void BM_BuildMap(benchmark::State& state) {
  const int resolution = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(conformal::build_map(comb(), resolution));
  state.SetComplexityN(resolution);
}
BENCHMARK(BM_BuildMap)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)
    ->Unit(benchmark::kMillisecond)->Complexity();

void BM_Forward(benchmark::State& state) {
  const auto& map = comb_map();
  cplx z(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(map.forward(z));
}
BENCHMARK(BM_Forward);

void BM_Inverse(benchmark::State& state) {
  const auto& map = comb_map();
  const cplx w = map.forward(cplx(0.3, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(map.inverse(w));
}
BENCHMARK(BM_Inverse);

void BM_OneMinusInverseRealAxis(benchmark::State& state) {
  const auto& map = comb_map();
  for (auto _ : state)
    benchmark::DoNotOptimize(map.one_minus_inverse_real_axis(7.5));
}
BENCHMARK(BM_OneMinusInverseRealAxis);

void BM_Trajectory(benchmark::State& state) {
  const auto& map = comb_map();
  const auto grid = dynamics::make_time_grid(dynamics::TimeGridPolicy{}, 8.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(dynamics::trajectory(map, cplx(0, 0), grid));
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(grid.size()));
}
BENCHMARK(BM_Trajectory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
