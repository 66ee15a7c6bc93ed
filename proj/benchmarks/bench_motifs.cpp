#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "popalign/motifs.hpp"

using popalign::bench::random_matrix;

static void BM_ButterflyCount(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const popalign::InteractionMatrix Y = random_matrix(1, side, 2 * side, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(popalign::butterfly_count(Y));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ButterflyCount)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_TraceA4(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const popalign::InteractionMatrix Y = random_matrix(2, side, side, 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(popalign::trace_a4(Y));
    }
}
BENCHMARK(BM_TraceA4)->RangeMultiplier(2)->Range(64, 512);
