// Serial vs OpenMP bench-harness kernels, plus per-algorithm packing throughput.

#include <benchmark/benchmark.h>

#include "rangepack/baselines.hpp"
#include "rangepack/bench.hpp"
#include "rangepack/orlib.hpp"
#include "rangepack/range_packer.hpp"

using namespace rangepack;

namespace {

std::vector<BenchDataset> suite() {
  GeneratorSpec spec;
  spec.n = 500;
  spec.count = 40;
  return {generate_dataset(spec)};
}

BenchOptions options() {
  BenchOptions o;
  o.algorithms = {Algorithm::range, Algorithm::ffd, Algorithm::bfd};
  o.timing = false;
  return o;
}

void BM_RunBenchSerial(benchmark::State& state) {
  const auto datasets = suite();
  const auto opts = options();
  for (auto _ : state) benchmark::DoNotOptimize(run_bench_serial(datasets, opts));
}
BENCHMARK(BM_RunBenchSerial)->Unit(benchmark::kMillisecond);

void BM_RunBenchParallel(benchmark::State& state) {
  const auto datasets = suite();
  const auto opts = options();
  for (auto _ : state) benchmark::DoNotOptimize(run_bench_parallel(datasets, opts));
}
BENCHMARK(BM_RunBenchParallel)->Unit(benchmark::kMillisecond);

void BM_RangePack(benchmark::State& state) {
  const Instance inst = generate_uniform(static_cast<std::size_t>(state.range(0)), 0.000001, 0.999999, 1);
  RangeConfig config;
  config.range_count = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pack(inst, config));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RangePack)
    ->ArgsProduct({{10'000, 100'000, 1'000'000}, {10, 80}})
    ->Unit(benchmark::kMillisecond);

void BM_FirstFitDecreasing(benchmark::State& state) {
  const Instance inst = generate_uniform(static_cast<std::size_t>(state.range(0)), 0.000001, 0.999999, 1);
  for (auto _ : state) benchmark::DoNotOptimize(first_fit_decreasing(inst));
}
BENCHMARK(BM_FirstFitDecreasing)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
