#include <benchmark/benchmark.h>

#include <vector>

#include "weaksde/brownian.hpp"
#include "weaksde/lambda.hpp"
#include "weaksde/stats.hpp"
#include "weaksde/tangential.hpp"

using namespace weaksde;

static void BM_BrownianPath(benchmark::State& state) {
    const TimeGrid grid = TimeGrid::uniform(0.0, 1.0, static_cast<int>(state.range(0)) + 1);
    Rng rng(Seed{1, 0});
    for (auto _ : state) {
        const Path path = sample_brownian(rng, grid);
        benchmark::DoNotOptimize(path.back());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BrownianPath)->RangeMultiplier(4)->Range(256, 16384);

static void BM_TangentialPath(benchmark::State& state) {
    const TimeGrid grid = TimeGrid::logspaced(1e-4, 4.0, static_cast<int>(state.range(0)) + 1);
    Rng rng(Seed{2, 0});
    for (auto _ : state) {
        const PolarPath path = simulate_tangential(rng, grid);
        benchmark::DoNotOptimize(path.lifted.back());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TangentialPath)->RangeMultiplier(4)->Range(256, 16384);

static void BM_BesqStep(benchmark::State& state) {
    Rng rng(Seed{3, 0});
    const LambdaParams params = LambdaParams::from_lambda(0.5);
    double z = 1.0;
    for (auto _ : state) {
        z = besq_step(rng, z, 2.5e-4, params.delta);
        benchmark::DoNotOptimize(z);
        if (z > 1e6) z = 1.0;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BesqStep);

static void BM_KuiperTest(benchmark::State& state) {
    Rng rng(Seed{4, 0});
    std::vector<double> values(static_cast<std::size_t>(state.range(0)));
    for (double& v : values) v = rng.uniform(0.0, 6.28);
    const TorusSample sample = TorusSample::wrap(values);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuiper_statistic(sample));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KuiperTest)->RangeMultiplier(10)->Range(1000, 100000);

BENCHMARK_MAIN();
