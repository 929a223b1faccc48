#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "tsdist/tsdist.hpp"

namespace {

using namespace tsdist;

// Random walk in `dim` dimensions with a jump roughly every 100 steps.
TimeSeries walk(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n * dim, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double jump = u(rng) < 0.01 ? 25.0 : 0.0;
    for (std::size_t k = 0; k < dim; ++k) v[i * dim + k] = v[(i - 1) * dim + k] + step(rng) + jump;
  }
  return TimeSeries(std::move(v), dim);
}

void BM_Dtw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TimeSeries a = walk(n, 3, 1), b = walk(n, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dtw(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(250, 2000)->Complexity(benchmark::oNSquared);

void BM_Variant(benchmark::State& state, const char* name) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TimeSeries a = walk(n, 3, 3), b = walk(n, 3, 4);
  const PairwiseDistance d = make_spd_variant(AlgoConfig::from_name(name));
  for (auto _ : state) benchmark::DoNotOptimize(d(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Variant, sdtw, "sdtw")->RangeMultiplier(2)->Range(250, 2000)->Complexity(benchmark::oNSquared);
BENCHMARK_CAPTURE(BM_Variant, wdtw, "wdtw")->RangeMultiplier(2)->Range(250, 2000);
BENCHMARK_CAPTURE(BM_Variant, swdtw, "swdtw")->RangeMultiplier(2)->Range(250, 2000);
BENCHMARK_CAPTURE(BM_Variant, scidtw, "scidtw")->RangeMultiplier(2)->Range(250, 2000);

void BM_PairwiseMatrix(benchmark::State& state) {
  std::vector<TimeSeries> series;
  for (int i = 0; i < 24; ++i) series.push_back(walk(300, 3, 100 + i).with_id("s" + std::to_string(i)));
  MatrixOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  const PairwiseDistance d = make_spd_variant(AlgoConfig::from_name("sdtw"));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_matrix(series, d, opts));
}
BENCHMARK(BM_PairwiseMatrix)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
