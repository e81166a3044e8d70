#include <catch2/catch_amalgamated.hpp>

#include "disjlab/bitstring.hpp"
#include "disjlab/errors.hpp"
#include "disjlab/rational.hpp"
#include "disjlab/truth_table.hpp"

#include <sstream>

using namespace disjlab;

TEST_CASE("text form writes coordinate 0 first") {
    const BitString s = BitString::parse("10");
    CHECK(s.bits == 1);
    CHECK(s.n == 2);
    CHECK(s.str() == "10");
    CHECK(BitString::parse("01").bits == 2);
    CHECK(BitString::parse("0110").coordinates() == std::vector<int>{1, 2});
}

TEST_CASE("parse rejects junk") {
    CHECK_THROWS_AS(BitString::parse("012"), Error);
}

TEST_CASE("lexicographic index round-trips") {
    for (int n = 1; n <= 5; ++n) {
        std::string previous;
        for (std::uint64_t i = 0; i < (1ULL << n); ++i) {
            const BitString s = BitString::from_lex_index(i, n);
            CHECK(s.lex_index() == i);
            if (i > 0) CHECK(previous < s.str());
            previous = s.str();
        }
    }
}

TEST_CASE("masks of a given weight are ascending and complete") {
    const auto m = masks_of_weight(5, 2);
    CHECK(m.size() == 10);
    CHECK(std::is_sorted(m.begin(), m.end()));
    for (auto x : m) CHECK(std::popcount(x) == 2);
}

TEST_CASE("subset visitor matches brute force") {
    const std::uint64_t of = 0b101101;
    for (int w = 0; w <= 4; ++w) {
        std::vector<std::uint64_t> got;
        for_each_subset_of_weight(of, w, [&](std::uint64_t s) { got.push_back(s); });
        std::vector<std::uint64_t> want;
        for (std::uint64_t s = 0; s < 64; ++s) {
            if ((s & ~of) == 0 && std::popcount(s) == w) want.push_back(s);
        }
        CHECK(got == want);
    }
    int calls = 0;
    for_each_subset_of_weight(of, 5, [&](std::uint64_t) { ++calls; });
    CHECK(calls == 0);
}

TEST_CASE("removing coordinates compacts in order") {
    const BitString s = BitString::parse("110101");
    const BitString r = remove_coordinates(s, 0b000011);
    CHECK(r.n == 4);
    CHECK(r.str() == "0101");
    CHECK(lowest_coordinates(0b110110, 2) == 0b000110);
}

TEST_CASE("rationals render canonically and parse decimals exactly") {
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("truth tables serialize and parse back") {
    for (const char* fam : {"NDISJ", "DISJ", "EQ", "IP", "AND", "ZERO", "ONE"}) {
        const TruthTable t = make_family(fam, 2);
        std::istringstream in(t.serialize());
        const TruthTable u = TruthTable::parse(in);
        CHECK(u.serialize() == t.serialize());
    }
    CHECK(make_family("DISJ", 3).ones() == 27);
    CHECK(make_family("EQ", 3).ones() == 8);
    CHECK(make_family("AND", 3).ones() == 1);
    CHECK_THROWS_AS(make_family("XOR", 2), Error);
}
