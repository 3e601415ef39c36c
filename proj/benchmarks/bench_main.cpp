#include <benchmark/benchmark.h>

#include "onewave/disk.hpp"
#include "onewave/forward.hpp"
#include "onewave/imaging.hpp"
#include "onewave/indicators.hpp"
#include "onewave/operator.hpp"
#include "onewave/spectra.hpp"
#include "onewave/util.hpp"

using namespace onewave;

namespace {

const ElasticMedium kMedium = ElasticMedium::make(2.0, 1.0, 10.0);

void BM_CylinderTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CylinderTable(7.5, n));
}
BENCHMARK(BM_CylinderTable)->Arg(30)->Arg(120);

void BM_DiskFarField(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const DiskSolver disk(0.3, kMedium, default_truncation(kMedium.ks() * 0.3));
  const PlaneWaveSpec w{Direction{0.0}, 1.0, 1.0};
  for (auto _ : state)
    for (int j = 0; j < M; ++j) benchmark::DoNotOptimize(disk_farfield(grid_angle(j, M), w, Vec2(0.1, 0.0), disk));
}
BENCHMARK(BM_DiskFarField)->Arg(64)->Arg(256);

void BM_DiskSpectrum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DiskSpectrum(1.2, kMedium, N));
}
BENCHMARK(BM_DiskSpectrum)->Arg(16)->Arg(32);

void BM_OneWaveIndicator(benchmark::State& state) {
  const auto data = generate_dataset(Target::disk(Vec2(0.1, 0.0), 0.3), PlaneWaveSpec{Direction{0.0}, 1.0, 1.0}, 128,
                                     {}, kMedium);
  const DiskSpectrum spec(1.2, kMedium, 30);
  for (auto _ : state) benchmark::DoNotOptimize(one_wave_W(data, spec, Vec2(0.2, 0.1), 30));
}
BENCHMARK(BM_OneWaveIndicator);

void BM_MFSSquare(benchmark::State& state) {
  MFSConfig cfg;
  cfg.n_sources = static_cast<int>(state.range(0));
  cfg.residual_tolerance = 1.0;
  const auto sq = PolygonScatterer::square(Vec2::Zero(), 0.6);
  const PlaneWaveSpec w{Direction{0.3}, 1.0, 0.0};
  for (auto _ : state) {
    MFSSolver solver(sq, cfg, kMedium);
    benchmark::DoNotOptimize(solver.solve(w, false));
  }
}
BENCHMARK(BM_MFSSquare)->Arg(96)->Arg(192)->Unit(benchmark::kMillisecond);

void BM_ImagingGrid(benchmark::State& state) {
  set_thread_count(1);
  const auto data = generate_dataset(Target::disk(Vec2(0.1, 0.0), 0.3), PlaneWaveSpec{Direction{0.0}, 1.0, 1.0}, 128,
                                     {}, kMedium);
  ImagingScenario sc;
  sc.grid.nx = sc.grid.ny = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_imaging(sc, data, kMedium));
}
BENCHMARK(BM_ImagingGrid)->Arg(41)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_ClassicalDecomposition(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto data = generate_matrix_dataset(Target::disk(Vec2(0.1, 0.0), 0.3), M, {}, kMedium);
  const CMat F = assemble_F(data, kMedium);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_far_field_operator(F, kMedium, SpectrumKind::Full));
}
BENCHMARK(BM_ClassicalDecomposition)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
