#include "gapk/gap.hpp"
#include "gapk/kernels.hpp"
#include "gapk/localizer.hpp"
#include "gapk/models.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gapk;

std::vector<double> shifts(int count) { return open_grid(0.5, count); }

void BM_BorderedGapsSerial(benchmark::State& state) {
  const OperatorElement x = random_gapped(8, static_cast<Index>(state.range(0)), 0.4, false, 7);
  const auto s = shifts(32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::bordered_gaps(x, s, {}));
  }
}

void BM_BorderedGapsOmp(benchmark::State& state) {
  const OperatorElement x = random_gapped(8, static_cast<Index>(state.range(0)), 0.4, false, 7);
  const auto s = shifts(32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::bordered_gaps(x, s, {}));
  }
}

std::vector<std::pair<double, double>> sweep_points(const ValidRegion& r) {
  std::vector<std::pair<double, double>> pts;
  const double cap = r.kappa_max(0.25 * r.delta);
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      pts.emplace_back(cap * i / 6.0, r.delta * j / 6.0);
    }
  }
  return pts;
}

void BM_LocalizerSweepSerial(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SpectralTriple triple = circle_dirac(N);
  const OperatorElement x = circle_unitary_truncation(1, N);
  const auto pts = sweep_points(valid_region(triple, x, 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::localizer_sweep(triple, x, pts, {}));
  }
}

void BM_LocalizerSweepOmp(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SpectralTriple triple = circle_dirac(N);
  const OperatorElement x = circle_unitary_truncation(1, N);
  const auto pts = sweep_points(valid_region(triple, x, 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::localizer_sweep(triple, x, pts, {}));
  }
}

void BM_ContractionSerial(benchmark::State& state) {
  const CMatrix a = random_unitary(state.range(0), 3);
  const auto t = std::vector<double>(65, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::contraction_min_singular(a, Complex(0, 1), t));
  }
}

void BM_ContractionOmp(benchmark::State& state) {
  const CMatrix a = random_unitary(state.range(0), 3);
  const auto t = std::vector<double>(65, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::contraction_min_singular(a, Complex(0, 1), t));
  }
}

}  // namespace

BENCHMARK(BM_BorderedGapsSerial)->Arg(2)->Arg(8);
BENCHMARK(BM_BorderedGapsOmp)->Arg(2)->Arg(8);
BENCHMARK(BM_LocalizerSweepSerial)->Arg(8)->Arg(32);
BENCHMARK(BM_LocalizerSweepOmp)->Arg(8)->Arg(32);
BENCHMARK(BM_ContractionSerial)->Arg(16)->Arg(64);
BENCHMARK(BM_ContractionOmp)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
