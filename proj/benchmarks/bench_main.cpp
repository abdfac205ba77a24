#include <benchmark/benchmark.h>

#include <heisenwave/calderon.hpp>

using namespace heisenwave;

namespace {

void BM_HeatSample(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const GridSpec g = GridSpec::cube(6.0, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ev.sample(g, 1.0, {1, 0, 0}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_HeatSample)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_HeatCellAverage(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const GridSpec g = GridSpec::cube(6.0, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ev.sample_cell_average(g, 0.01, {0, -0.01, 0}));
}
BENCHMARK(BM_HeatCellAverage)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_HeatPoint(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const GroupPoint w{0.3, -0.7, 1.1};
  for (auto _ : state) benchmark::DoNotOptimize(ev.heat_kernel(w, 1.0));
}
BENCHMARK(BM_HeatPoint);

void BM_ConvolveLattice(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const GridSpec g = GridSpec::lattice(6.0, static_cast<std::uint32_t>(state.range(0)));
  const SampledField h = ev.sample(g, 0.5, {1, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(convolve(h, h));
  state.counters["nodes"] = static_cast<double>(g.size());
}
BENCHMARK(BM_ConvolveLattice)->Arg(13)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_SubLaplacian(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const SampledField h = ev.sample(GridSpec::cube(6.0, 97), 1.0, {1, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(sub_laplacian(h));
}
BENCHMARK(BM_SubLaplacian)->Unit(benchmark::kMillisecond);

void BM_CubicDilation(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const SampledField h = ev.sample(GridSpec::lattice(6.0, 25), 1.0, {1, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(dilate_field(Scale(0.3), h, Normalization::L1, Resampling::cubic_cell_average));
}
BENCHMARK(BM_CubicDilation)->Unit(benchmark::kMillisecond);

void BM_NumericKernel(benchmark::State& state) {
  const HeatKernelEvaluator ev;
  const MexicanHatWavelet phi(ev);
  const GridSpec g = GridSpec::lattice(6.0, 25);
  const ScaleLattice s(0.1, 4.0, 32);
  for (auto _ : state) benchmark::DoNotOptimize(calderon_kernel_numeric(phi, g, 0.1, 4.0, s));
}
BENCHMARK(BM_NumericKernel)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
