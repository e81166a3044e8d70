#include "disjlab/combinatorics.hpp"
#include "disjlab/scan.hpp"

#include <benchmark/benchmark.h>

using namespace disjlab;

namespace {

void BM_RemovalIdentity(benchmark::State& state) {
    const MuParams p{1, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2};
    std::uint64_t pairs = 0;
    for (auto _ : state) {
        const auto r = check_lemma4(RemovalIdentity::I, p);
        pairs += r.pairs_checked;
        benchmark::DoNotOptimize(r.max_abs_difference);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(pairs));
}
BENCHMARK(BM_RemovalIdentity)->DenseRange(4, 8, 2);

void BM_SampleMu(benchmark::State& state) {
    const MuParams p{4, 48, 12};
    std::mt19937_64 rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_mu(p, rng));
}
BENCHMARK(BM_SampleMu);

void BM_SamplingScan(benchmark::State& state) {
    ScanConfig cfg;
    cfg.seed = 1;
    cfg.samples = 200;
    cfg.population = ScanPopulation::Sampled;
    for (auto _ : state) benchmark::DoNotOptimize(sampling_lemma_scan(MuParams{0, 8, 2}, 1, cfg).summary.examined);
}
BENCHMARK(BM_SamplingScan);

}  // namespace
