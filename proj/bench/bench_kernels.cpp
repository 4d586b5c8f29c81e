#include <benchmark/benchmark.h>

#include "beamalign/grid_search.hpp"

using namespace beamalign;

namespace {

void BM_ExhaustiveSerial(benchmark::State& state) {
  const auto h = ChannelMatrix::random(4, 4, 7);
  const auto g = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search_serial(h, RateParams{}, g));
}

void BM_ExhaustiveOmp(benchmark::State& state) {
  const auto h = ChannelMatrix::random(4, 4, 7);
  const auto g = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(h, RateParams{}, g));
}

void BM_RateGridSerial(benchmark::State& state) {
  const auto h = ChannelMatrix::random(4, 4, 7);
  const auto g = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rate_grid_serial(h, RateParams{}, g));
}

void BM_RateGridOmp(benchmark::State& state) {
  const auto h = ChannelMatrix::random(4, 4, 7);
  const auto g = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rate_grid(h, RateParams{}, g));
}

}  // namespace

BENCHMARK(BM_ExhaustiveSerial)->Arg(360)->Arg(1024);
BENCHMARK(BM_ExhaustiveOmp)->Arg(360)->Arg(1024);
BENCHMARK(BM_RateGridSerial)->Arg(360);
BENCHMARK(BM_RateGridOmp)->Arg(360);

BENCHMARK_MAIN();
