// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "besicovitch/lattice.hpp"
#include "besicovitch/measure.hpp"

using namespace besicovitch;

namespace {

std::vector<Key> contribs(unsigned n) {
  return key_contributions(DigitSystem::base4_model(), make_ratio(3, 7), n);
}

void BM_SortedKeysSerial(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto c = contribs(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::sorted_keys(c, 4, n));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * n)));
}

void BM_SortedKeysOmp(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto c = contribs(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::sorted_keys(c, 4, n));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * n)));
}

void BM_WindowedStatsSerial(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto c = contribs(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::windowed_stats(c, 4, n, 64));
  }
}

void BM_WindowedStatsOmp(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto c = contribs(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::windowed_stats(c, 4, n, 64));
  }
}

const IntegerCover& cover(unsigned n) {
  static const IntegerCover c =
      integer_cover(DigitSystem::base4_model(), make_ratio(3, 7), n);
  return c;
}

void BM_UnionLengthSerial(benchmark::State& state) {
  const auto& c = cover(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::union_length(c.lows, c.width));
  }
}

void BM_UnionLengthOmp(benchmark::State& state) {
  const auto& c = cover(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::union_length(c.lows, c.width));
  }
}

}  // namespace

BENCHMARK(BM_SortedKeysSerial)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SortedKeysOmp)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowedStatsSerial)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowedStatsOmp)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnionLengthSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_UnionLengthOmp)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
