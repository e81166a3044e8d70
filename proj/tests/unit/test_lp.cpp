#include <catch2/catch_amalgamated.hpp>

#include "disjlab/errors.hpp"
#include "disjlab/lp.hpp"

using namespace disjlab;

namespace {

Rational exact_of(const LPResult& r) {
    REQUIRE(r.status == LpStatus::Optimal);
    REQUIRE(r.exact_optimum.has_value());
    return *r.exact_optimum;
}

std::size_t pairs_with_intersection(int n, int k, bool more) {
    std::size_t c = 0;
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        for (std::uint64_t y = 0; y < (1ULL << n); ++y) {
            const int s = std::popcount(x & y);
            if (more ? s > k : s == k) ++c;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("search LP rows by class") {
    for (int n = 1; n <= 4; ++n) {
        const LPInstance lp = build_search_lp(n, 1, 1);
        CHECK(lp.count(RowClass::Cover) == pairs_with_intersection(n, 1, false));
        CHECK(lp.count(RowClass::Overlap) == pairs_with_intersection(n, 1, true));
        CHECK(lp.count(RowClass::Zero) == 0);
        CHECK(lp.family.kind == RectangleFamily::Kind::Witness);
    }
    const LPInstance z = build_search_lp(2, 1, 1, {true});
    CHECK(z.count(RowClass::Zero) == pairs_with_intersection(2, 0, false));
    CHECK(z.family.kind == RectangleFamily::Kind::Full);
    CHECK_THROWS_AS(build_search_lp(2, 3, 1), Error);
    CHECK_THROWS_AS(build_search_lp(2, 1, 2), Error);
}

TEST_CASE("frozen optima from exact enumeration") {
    CHECK(exact_of(solve_full_enumeration(build_search_lp(2, 1, 1))) == 3);
    CHECK(exact_of(solve_full_enumeration(build_search_lp(1, 1, Rational(1, 2)))) == Rational(1, 2));
    CHECK(exact_of(solve_full_enumeration(build_lovasz_lp(make_family("NDISJ", 2), 0))) == 2);
    CHECK(exact_of(solve_full_enumeration(build_smooth_lp(make_family("NDISJ", 2), 0))) == Rational(5, 2));
    CHECK(exact_of(solve_full_enumeration(build_lovasz_lp(make_family("EQ", 2), 0))) == 4);
    CHECK(exact_of(solve_full_enumeration(build_smooth_lp(make_family("EQ", 2), 0))) == 4);
    CHECK(exact_of(solve_full_enumeration(build_lovasz_lp(make_family("AND", 2), 0))) == 1);
}

TEST_CASE("constraint generation reproduces the n = 3 values") {
    const LPResult s = solve_constraint_generation(build_search_lp(3, 1, 1));
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.optimum == Catch::Approx(87.0 / 16).epsilon(1e-9));
    const LPResult nd = solve_constraint_generation(build_smooth_lp(make_family("NDISJ", 3), 0));
    REQUIRE(nd.status == LpStatus::Optimal);
    CHECK(nd.optimum == Catch::Approx(4.5).epsilon(1e-9));
    REQUIRE(nd.dual_bound.has_value());
    CHECK(*nd.dual_bound <= nd.optimum + 1e-9);
    CHECK(*nd.dual_bound == Catch::Approx(nd.optimum).epsilon(1e-8));
    const LPResult one = solve_constraint_generation(build_smooth_lp(make_family("ONE", 3), 0));
    REQUIRE(one.status == LpStatus::Optimal);
    CHECK(one.optimum == Catch::Approx(1.0));
}

TEST_CASE("both solvers agree on every family at n = 2") {
    for (const char* fam : {"NDISJ", "DISJ", "EQ", "IP", "AND", "ONE"}) {
        for (const Rational eps : {Rational(0), Rational(1, 8)}) {
            for (int which = 0; which < 2; ++which) {
                const TruthTable f = make_family(fam, 2);
                const LPInstance lp = which == 0 ? build_lovasz_lp(f, eps) : build_smooth_lp(f, eps);
                INFO(fam << " " << to_string(lp.kind) << " eps " << to_string(eps));
                const LPResult full = solve_full_enumeration(lp);
                const LPResult cg = solve_constraint_generation(lp);
                REQUIRE(full.status == LpStatus::Optimal);
                REQUIRE(cg.status == LpStatus::Optimal);
                CHECK(cg.optimum == Catch::Approx(full.optimum).epsilon(1e-8).margin(1e-9));
                CHECK(cg.max_residual <= 1e-7);
            }
        }
    }
}

TEST_CASE("float and exact enumeration agree") {
    EnumerationOptions fl;
    fl.arithmetic = Arithmetic::Float;
    const LPInstance lp = build_smooth_lp(make_family("IP", 2), Rational(1, 8));
    const LPResult a = solve_full_enumeration(lp);
    const LPResult b = solve_full_enumeration(lp, fl);
    CHECK(a.mode == NumericMode::ExactRational);
    CHECK(b.mode == NumericMode::FloatTolerance);
    CHECK(b.optimum == Catch::Approx(a.optimum).epsilon(1e-9));
}

TEST_CASE("zero function has an empty cover") {
    const LPResult r = solve_full_enumeration(build_lovasz_lp(make_family("ZERO", 2), 0));
    CHECK(exact_of(r) == 0);
}

TEST_CASE("ambiguity relaxation never raises the optimum") {
    const LPInstance lp = build_search_lp(2, 1, 1);
    const Rational base = exact_of(solve_full_enumeration(lp));
    for (const Rational rate : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
        const LPInstance relaxed = apply_ambiguity_variant(lp, rate, 2);
        CHECK(exact_of(solve_full_enumeration(relaxed)) <= base);
    }
    CHECK_THROWS_AS(apply_ambiguity_variant(build_lovasz_lp(make_family("AND", 1), 0), 1, 1), Error);
    CHECK_THROWS_AS(apply_ambiguity_variant(lp, -1, 1), Error);
}

TEST_CASE("primal check accepts a hand cover and rejects a short one") {
    const LPInstance lp = build_search_lp(1, 1, 1);
    const Rectangle r = Rectangle::containing(1, 1);
    CHECK(check_primal(lp, {{r, 1}}).feasible);
    const PrimalCheck half = check_primal(lp, {{r, Rational(1, 2)}});
    CHECK_FALSE(half.feasible);
    CHECK(half.max_violation == Rational(1, 2));
    CHECK_FALSE(check_primal(lp, {{r, -1}}).feasible);
}

TEST_CASE("explicit families need enumeration") {
    LPInstance lp = build_search_lp(1, 1, 1);
    lp.family = RectangleFamily::explicit_list({Rectangle::containing(1, 1)});
    CHECK(exact_of(solve_full_enumeration(lp)) == 1);
    CHECK_THROWS_AS(solve_constraint_generation(lp), Error);
}
