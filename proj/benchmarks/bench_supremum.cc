#include <cmath>

#include <benchmark/benchmark.h>

#include "lcbm/exact_supremum.h"
#include "lcbm/levy_ciesielski.h"

namespace lcbm {
namespace {

const double kDelta = std::ldexp(1.0, -5);

void BM_BandSupBranchAndBound(benchmark::State& state) {
  const TruncatedPath path(sample_coefficients(static_cast<int>(state.range(0)), 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        global_band_sup(path, kDelta, DenominatorKind::gap_global()).value);
  }
}
BENCHMARK(BM_BandSupBranchAndBound)
    ->Arg(6)->Arg(9)->Arg(12)->Arg(18)->Unit(benchmark::kMicrosecond);

void BM_BandSupExhaustive(benchmark::State& state) {
  const TruncatedPath path(sample_coefficients(static_cast<int>(state.range(0)), 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        global_band_sup_exhaustive(path, kDelta, DenominatorKind::gap_global())
            .value);
  }
}
BENCHMARK(BM_BandSupExhaustive)->Arg(6)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_UniformBandSup(benchmark::State& state) {
  const TruncatedPath path(sample_coefficients(static_cast<int>(state.range(0)), 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniform_band_sup(path, kDelta).value);
  }
}
BENCHMARK(BM_UniformBandSup)->Arg(9)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_LocalSup(benchmark::State& state) {
  const TruncatedPath path(sample_coefficients(static_cast<int>(state.range(0)), 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        local_sup(path, std::ldexp(1.0, -10), DenominatorKind::local_corrected(1.0))
            .value);
  }
}
BENCHMARK(BM_LocalSup)->Arg(18)->Unit(benchmark::kMicrosecond);

void BM_GridOracle(benchmark::State& state) {
  const TruncatedPath path(sample_coefficients(5, 7));
  const double res = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const GridProfile profile(path, res, kDelta);
    benchmark::DoNotOptimize(
        profile.global(kDelta, DenominatorKind::gap_global()).value);
  }
}
BENCHMARK(BM_GridOracle)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lcbm

BENCHMARK_MAIN();
