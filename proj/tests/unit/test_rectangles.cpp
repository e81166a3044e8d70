#include <catch2/catch_amalgamated.hpp>

#include "disjlab/errors.hpp"
#include "disjlab/rectangles.hpp"

#include "support/fixtures.hpp"

using namespace disjlab;

namespace {

InputPair pair_of(const char* x, const char* y) { return {BitString::parse(x), BitString::parse(y)}; }

Rectangle rect(int n, std::vector<const char*> rows, std::vector<const char*> cols) {
    std::vector<BitString> r;
    std::vector<BitString> c;
    for (auto s : rows) r.push_back(BitString::parse(s));
    for (auto s : cols) c.push_back(BitString::parse(s));
    return Rectangle(n, r, c);
}

}  // namespace

TEST_CASE("rectangles sort and deduplicate their sides") {
    const Rectangle r = rect(2, {"11", "01", "11"}, {"10"});
    CHECK(r.rows().size() == 2);
    CHECK(r.size() == 2);
    CHECK(r.contains(pair_of("01", "10")));
    CHECK_FALSE(r.contains(pair_of("00", "10")));
    CHECK(Rectangle::empty(3).empty());
    CHECK(Rectangle::full(2).size() == 16);
}

TEST_CASE("containing and common mask") {
    const Rectangle r = Rectangle::containing(3, 0b001);
    CHECK(r.rows().size() == 4);
    CHECK(r.common_mask() == 0b001);
    CHECK(witness_set(r, 1)->mask == 0b001);
    CHECK_FALSE(witness_set(r, 2).has_value());
    CHECK(witness_set(rect(3, {"111"}, {"111"}), 2)->str() == "{1,2}");
    CHECK_THROWS_AS(witness_set(Rectangle::empty(3), 1), Error);
}

TEST_CASE("rectangle weight sums the covered entries") {
    WeightMatrix<Rational> w(2);
    w.set(pair_of("10", "10"), Rational(1, 2));
    w.set(pair_of("01", "10"), Rational(-1, 4));
    w.set(pair_of("11", "11"), 3);
    CHECK(rect_weight(w, rect(2, {"10", "01"}, {"10"})) == Rational(1, 4));
    CHECK(rect_weight(w, Rectangle::full(2)) == Rational(13, 4));
    CHECK(w.total_positive() == Rational(7, 2));
    CHECK(w.total_negative() == Rational(-1, 4));
    w.set(pair_of("11", "11"), 0);
    CHECK(w.entries().size() == 2);
    CHECK_THROWS_AS(w.set(pair_of("1", "1"), 1), Error);
}

TEST_CASE("oracle matches brute force on random weights") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + t % 3;
        const int side = 1 << n;
        const int rows = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(side, 4)));
        const int cols = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(side, 4)));
        const auto w = testing::random_weights(n, rows, cols, rng);
        const auto best = max_weight_rectangle(w);
        CHECK(to_double(best.value) == testing::brute_force_max(w));
        if (!best.rect.empty()) CHECK(rect_weight(w, best.rect) == best.value);
    }
}

TEST_CASE("top submatrices lead with the maximum") {
    std::mt19937_64 rng(3);
    const auto w = testing::random_weights(2, 4, 4, rng);
    const auto all = [](const InputPair&) { return true; };
    const auto top = detail::oracle_top<Rational>(w, all, {}, kDefaultOracleRowSubsetCap, 5);
    REQUIRE_FALSE(top.empty());
    CHECK(top.front().value == max_weight_rectangle(w).value);
    for (std::size_t i = 1; i < top.size(); ++i) CHECK(top[i].value <= top[i - 1].value);
}

TEST_CASE("forbidden pairs are never covered") {
    WeightMatrix<Rational> w(1);
    w.set(pair_of("0", "0"), 1);
    w.set(pair_of("1", "1"), 1);
    w.set(pair_of("0", "1"), 1);
    const PairFilter no = [](const InputPair& p) { return p.x.bits == 0 && p.y.bits == 1; };
    const auto best = max_weight_rectangle(w, no);
    CHECK(best.value == 1);
    CHECK_FALSE(best.rect.contains(pair_of("0", "1")));
}

TEST_CASE("witness-restricted maximum matches a filtered search") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto w = testing::random_weights(3, 4, 4, rng);
        const auto got = max_weight_rectangle_in_Rv(w, 1, 3);
        Rational want = 0;
        for (std::uint64_t sub : k_subsets_lex(3, 1)) {
            WeightMatrix<Rational> part(3);
            for (const auto& [p, v] : w.entries()) {
                if ((p.x.bits & p.y.bits & sub) == sub) part.set(p, v);
            }
            want = std::max(want, max_weight_rectangle(part).value);
        }
        CHECK(got.value == want);
    }
    CHECK(k_subsets_lex(4, 2) == std::vector<std::uint64_t>{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100});
}

TEST_CASE("enumeration covers every mask pair") {
    CHECK(enumerate_rectangles(3, 2).size() == 32);
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (auto m : enumerate_rectangles(3, 2)) seen.insert({m.rows, m.cols});
    CHECK(seen.size() == 32);
    CHECK_THROWS_AS(enumerate_rectangles(20, 20, 1000), Error);
    const auto labels = all_strings(2);
    CHECK(make_rectangle(2, labels, labels, {0b0011, 0b1000}).size() == 2);
}

TEST_CASE("witness decomposition is exact") {
    std::mt19937_64 rng(9);
    const int n = 6;
    for (int t = 0; t < 10; ++t) {
        std::vector<BitString> rows;
        std::vector<BitString> cols;
        for (int i = 0; i < 12; ++i) rows.emplace_back((rng() & 0x3f) | 0b11, n);
        for (int i = 0; i < 12; ++i) cols.emplace_back((rng() & 0x3f) | 0b11, n);
        const auto rep = decompose_by_witness(Rectangle(n, rows, cols), 1, 3);
        CHECK(rep.exact());
    }
}

TEST_CASE("mass of the full rectangle is one") {
    const MuDistribution mu(MuParams{1, 5, 2});
    CHECK(mu_mass(mu, Rectangle::full(5)) == 1);
    CHECK(mu_mass(mu, Rectangle::empty(5)) == 0);
}
