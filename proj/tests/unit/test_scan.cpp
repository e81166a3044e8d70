#include <catch2/catch_amalgamated.hpp>

#include "disjlab/errors.hpp"
#include "disjlab/scan.hpp"

#include <cmath>

using namespace disjlab;

namespace {

ScanConfig sampled(std::uint64_t seed, std::uint64_t samples = 200) {
    ScanConfig c;
    c.seed = seed;
    c.samples = samples;
    c.population = ScanPopulation::Sampled;
    return c;
}

}  // namespace

TEST_CASE("rows are internally consistent") {
    const ScanReport r = sampling_lemma_scan(MuParams{0, 8, 2}, 1, sampled(4));
    CHECK(r.bar == Catch::Approx(std::exp2(-0.5 * 8)));
    std::uint64_t above = 0;
    for (const auto& row : r.rows) {
        CHECK(row.mu0 >= 0);
        CHECK(row.mu0 <= 1);
        CHECK(row.muk <= 1);
        if (row.mu0 > 0) {
            REQUIRE(row.ratio.has_value());
            CHECK(*row.ratio == row.muk / row.mu0);
        } else {
            CHECK_FALSE(row.ratio.has_value());
        }
        CHECK(row.above_bar == (to_double(row.mu0) >= r.bar));
        if (row.above_bar) ++above;
    }
    CHECK(r.summary.examined == r.rows.size());
    CHECK(r.summary.above_bar == above);
    if (r.summary.min_ratio) CHECK(*r.summary.min_ratio > 0);
    CHECK(r.summary.q25 <= r.summary.median);
    CHECK(r.summary.median <= r.summary.q75);
}

TEST_CASE("same seed gives byte-identical CSV") {
    const auto a = scan_csv(sampling_lemma_scan(MuParams{0, 8, 2}, 1, sampled(99)));
    const auto b = scan_csv(sampling_lemma_scan(MuParams{0, 8, 2}, 1, sampled(99)));
    const auto c = scan_csv(sampling_lemma_scan(MuParams{0, 8, 2}, 1, sampled(100)));
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.rfind("id,mu0[exact-rational]", 0) == 0);
}

TEST_CASE("small instances are scanned exhaustively") {
    ScanConfig cfg;
    cfg.seed = 1;
    const ScanReport r = sampling_lemma_scan(MuParams{0, 4, 1}, 1, cfg);
    CHECK(r.summary.population == "exhaustive");
    CHECK(r.rows.size() == 15 * 15);  // nonempty row and column sets over 4 singletons
    cfg.exhaustive_limit = 10;
    CHECK(sampling_lemma_scan(MuParams{0, 4, 1}, 1, cfg).summary.population == "sampled");
    cfg.population = ScanPopulation::Exhaustive;
    CHECK_THROWS_AS(sampling_lemma_scan(MuParams{0, 4, 1}, 1, cfg), Error);
}

TEST_CASE("the full rectangle alone has ratio one") {
    ScanConfig cfg;
    cfg.population = ScanPopulation::FullOnly;
    const ScanReport r = sampling_lemma_scan(MuParams{0, 8, 2}, 1, cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows.front().mu0 == 1);
    CHECK(*r.rows.front().ratio == 1);
}

TEST_CASE("a bar above one leaves the population empty") {
    ScanConfig cfg = sampled(2, 50);
    cfg.gamma = -1;
    const ScanReport r = sampling_lemma_scan(MuParams{0, 8, 2}, 1, cfg);
    CHECK(r.summary.above_bar == 0);
    CHECK(r.summary.empty_population);
    CHECK_FALSE(r.summary.min_ratio.has_value());
}

TEST_CASE("configuration is validated") {
    ScanConfig cfg;
    cfg.delta = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.delta = 0.1;
    cfg.gamma = std::nan("");
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK_THROWS_AS(sampling_lemma_scan(MuParams{0, 4, 1}, 3, ScanConfig{}), Error);
    CHECK(parse_population("sampled") == ScanPopulation::Sampled);
    CHECK_THROWS_AS(parse_population("everything"), Error);
}
