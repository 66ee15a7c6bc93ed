#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "popalign/spectral.hpp"

using popalign::bench::random_matrix;

static void BM_Svd(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const popalign::InteractionMatrix Y = random_matrix(3, side, 2 * side, 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(popalign::svd(Y));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_AlignmentProfile(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const popalign::InteractionMatrix Y = random_matrix(4, side, 2 * side, 0.1);
    const popalign::SpectralDecomposition D = popalign::svd(Y);
    for (auto _ : state) {
        benchmark::DoNotOptimize(popalign::alignment_profile(Y, D));
    }
}
BENCHMARK(BM_AlignmentProfile)->RangeMultiplier(2)->Range(32, 256);
