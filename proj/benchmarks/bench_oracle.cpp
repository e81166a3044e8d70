#include "disjlab/certificate.hpp"
#include "disjlab/rectangles.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace disjlab;

namespace {

WeightMatrix<double> dense_random(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    WeightMatrix<double> w(n);
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        for (std::uint64_t y = 0; y < (1ULL << n); ++y) w.set(InputPair(BitString(x, n), BitString(y, n)), u(rng));
    }
    return w;
}

void BM_MaxWeightRectangle(benchmark::State& state) {
    const auto w = dense_random(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(max_weight_rectangle(w).value);
}
BENCHMARK(BM_MaxWeightRectangle)->DenseRange(2, 4);

void BM_MaxWeightInRv(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto w = dense_random(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(max_weight_rectangle_in_Rv(w, 1, n).value);
}
BENCHMARK(BM_MaxWeightInRv)->DenseRange(2, 4);

void BM_VerifyCertificate(benchmark::State& state) {
    const auto c = build_paper_dual_certificate(static_cast<int>(state.range(0)), 1, 1, 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(verify_dual_certificate(c, VerifyMode::Oracle).max_weight);
}
BENCHMARK(BM_VerifyCertificate)->DenseRange(2, 4);

}  // namespace
