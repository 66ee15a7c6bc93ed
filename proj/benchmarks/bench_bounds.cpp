#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "popalign/degree.hpp"
#include "popalign/lp_bounds.hpp"
#include "popalign/pik_bounds.hpp"
#include "popalign/spectral.hpp"

using popalign::bench::random_matrix;

static void BM_PikBoundSet(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const popalign::InteractionMatrix Y = random_matrix(5, side, 2 * side, 0.1);
    const popalign::SpectralDecomposition D = popalign::svd(Y);
    const popalign::DegreeSummary deg = popalign::degree_summary(Y);
    const std::vector<std::size_t> S = popalign::top_k_items(deg.item_degrees, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(popalign::evaluate_pik_bounds(Y, D, S, 3));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PikBoundSet)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_LpBounds(benchmark::State& state) {
    const auto len = static_cast<std::size_t>(state.range(0));
    std::vector<double> s(len);
    popalign::SplitMix64 stream(6);
    for (double& v : s) v = 100.0 * stream.next_double();
    std::sort(s.begin(), s.end(), std::greater<>());
    const double mu = 0.3 * s.front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(popalign::lp_bounds(s, mu, 3));
    }
}
BENCHMARK(BM_LpBounds)->RangeMultiplier(4)->Range(16, 4096);

BENCHMARK_MAIN();
