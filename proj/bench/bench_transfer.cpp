// Serial vs OpenMP operator assembly and matrix-vector application.
#include <benchmark/benchmark.h>

#include <cmath>

#include "livsic/transfer_operator.hpp"

using namespace livsic;

namespace {

const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));

MapDescription bench_map() { return make_beta_map(kGolden); }

const RealFn kWeight = [](double x) { return 0.3 * std::sin(2.0 * M_PI * x); };

void BM_discretize_serial(benchmark::State& state) {
    const MapDescription map = bench_map();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            discretize(map, kWeight, n, Scheme::cell_average, Execution::serial));
}

void BM_discretize_parallel(benchmark::State& state) {
    const MapDescription map = bench_map();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(discretize(map, kWeight, n, Scheme::cell_average,
                                            Execution::parallel));
}

void BM_apply(benchmark::State& state) {
    const MapDescription map = bench_map();
    const int n = static_cast<int>(state.range(0));
    const SparseOperator op = discretize(map, kWeight, n);
    std::vector<double> v(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(v));
}

} // namespace

BENCHMARK(BM_discretize_serial)->Arg(1024)->Arg(4096)->Arg(16384);
BENCHMARK(BM_discretize_parallel)->Arg(1024)->Arg(4096)->Arg(16384);
BENCHMARK(BM_apply)->Arg(4096)->Arg(65536);

BENCHMARK_MAIN();
