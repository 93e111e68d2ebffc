#include <benchmark/benchmark.h>

#include "lcbm/levy_ciesielski.h"
#include "lcbm/rng.h"

namespace lcbm {
namespace {

void BM_HaarVariates(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    haar_variates(PathKey{1, trial++}, 12, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HaarVariates)->Arg(1 << 10)->Arg(1 << 16);

void BM_ResamplePath(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  TruncatedPath path;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    path.resample(level, PathKey{1, trial++}, 0);
    benchmark::DoNotOptimize(path.node_values().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{2} << level));
}
BENCHMARK(BM_ResamplePath)->DenseRange(4, 18, 7)->Unit(benchmark::kMicrosecond);

void BM_EvaluateTruncated(benchmark::State& state) {
  const TruncatedPath path(sample_coefficients(static_cast<int>(state.range(0)), 3));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.6180339887498949;
    if (t >= 1.0) t -= 1.0;
    benchmark::DoNotOptimize(evaluate_truncated(path, t));
  }
}
BENCHMARK(BM_EvaluateTruncated)->Arg(6)->Arg(18);

}  // namespace
}  // namespace lcbm

BENCHMARK_MAIN();
