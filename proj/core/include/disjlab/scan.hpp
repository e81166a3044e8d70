#pragma once

#include "disjlab/combinatorics.hpp"
#include "disjlab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace disjlab {

enum class ScanPopulation { Auto, Exhaustive, Sampled, FullOnly };

std::string_view to_string(ScanPopulation p);
ScanPopulation parse_population(std::string_view text);

struct ScanConfig {
    double gamma = 0.5;  // largeness bar: mu_0(R) >= 2^(-gamma n)
    double delta = 0.1;  // slack candidate in mu_0(R)/2^k - k 2^(-delta (n-k+1))
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 0;
    ScanPopulation population = ScanPopulation::Auto;
    /// Auto switches to exhaustive when there are at most this many rectangles.
    std::uint64_t exhaustive_limit = 1ULL << 16;

    void validate() const;
};

struct ScanRow {
    std::string id;
    Rational mu0;
    Rational muk;
    std::optional<Rational> mu1;
    std::optional<Rational> ratio;  // muk / mu0, absent when mu0 = 0
    bool above_bar = false;
};

struct ScanSummary {
    std::string population;
    std::uint64_t examined = 0;
    std::uint64_t above_bar = 0;
    std::optional<Rational> min_ratio;
    std::optional<std::string> min_ratio_id;
    double q25 = 0;
    double median = 0;
    double q75 = 0;
    double max_ratio = 0;
    /// Rectangles above the bar with mu_k < mu_0 / 2^(k+1).
    std::uint64_t below_half_power = 0;
    /// Smallest mu_1/mu_0 above the bar, compared with 2/3.
    std::optional<Rational> min_one_ratio;
    std::uint64_t below_two_thirds = 0;
    /// min of mu_k - (mu_0/2^k - k 2^(-delta (n-k+1))) above the bar.
    std::optional<double> min_slack;
    bool empty_population = false;
};

struct ScanReport {
    int n = 0;
    int m = 0;
    int k = 0;
    ScanConfig config;
    double bar = 0;
    std::vector<ScanRow> rows;
    ScanSummary summary;
};

/// Measures mu_{k,n,m}(R) against mu_{0,n,m}(R) on a rectangle population
/// built from m-subsets. Only p.n and p.m are used; k is target_k.
ScanReport sampling_lemma_scan(const MuParams& p, int target_k, const ScanConfig& cfg);

/// CSV with exact rationals as p/q; byte-identical for equal inputs.
std::string scan_csv(const ScanReport& report);

}  // namespace disjlab
