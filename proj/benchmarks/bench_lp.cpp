#include "disjlab/lp.hpp"

#include <benchmark/benchmark.h>

using namespace disjlab;

namespace {

void BM_SearchFullEnumeration(benchmark::State& state) {
    const LPInstance lp = build_search_lp(2, 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(solve_full_enumeration(lp).optimum);
}
BENCHMARK(BM_SearchFullEnumeration)->Unit(benchmark::kMillisecond);

void BM_SearchConstraintGeneration(benchmark::State& state) {
    const LPInstance lp = build_search_lp(static_cast<int>(state.range(0)), 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(solve_constraint_generation(lp).optimum);
}
BENCHMARK(BM_SearchConstraintGeneration)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SmoothConstraintGeneration(benchmark::State& state) {
    const LPInstance lp = build_smooth_lp(make_family("NDISJ", 3), Rational(1, 8));
    for (auto _ : state) benchmark::DoNotOptimize(solve_constraint_generation(lp).optimum);
}
BENCHMARK(BM_SmoothConstraintGeneration)->Unit(benchmark::kMillisecond);

}  // namespace
