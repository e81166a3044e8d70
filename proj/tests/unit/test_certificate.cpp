#include <catch2/catch_amalgamated.hpp>

#include "disjlab/certificate.hpp"
#include "disjlab/errors.hpp"

#include "support/fixtures.hpp"

using namespace disjlab;

namespace {

Rational power(const Rational& beta, int n, const Rational& alpha, int k) {
    Rational e = beta * n - alpha * k;
    e.canonicalize();
    return pow2(e.get_num().get_si());
}

}  // namespace

TEST_CASE("the small certificate is feasible in both modes") {
    const DualCertificate c = build_paper_dual_certificate(3, 1, 1, 1, Rational(1, 3));
    CHECK(c.value() == 1);
    CHECK(c.signs_ok());
    CHECK(c.universe == 4);
    CHECK(c.sigma == 1);
    const VerifyReport ex = verify_dual_certificate(c, VerifyMode::Exhaustive);
    const VerifyReport orc = verify_dual_certificate(c, VerifyMode::Oracle);
    CHECK(ex.feasible);
    CHECK(orc.feasible);
    CHECK(ex.max_weight == Rational(1, 6));
    CHECK(orc.max_weight == ex.max_weight);
    CHECK(rect_weight(c.combined(), orc.argmax) == orc.max_weight);
}

TEST_CASE("value is the closed form over a grid") {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= 2; ++k) {
            for (int m = k; 2 * m <= n; ++m) {
                for (int a = 0; a <= 2; ++a) {
                    for (int b = 0; b <= 1; ++b) {
                        const Rational alpha(a);
                        const Rational beta(b);
                        const auto c = build_paper_dual_certificate(n, k, m, alpha, beta);
                        CHECK(c.value() == power(beta, n, alpha, k));
                    }
                }
            }
        }
    }
}

TEST_CASE("a too-large scale is infeasible with a named witness") {
    const auto c = build_paper_dual_certificate(3, 1, 1, 1, 3);
    const VerifyReport r = verify_dual_certificate(c, VerifyMode::Oracle);
    CHECK_FALSE(r.feasible);
    CHECK(r.max_weight > 1);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->str() == "{1}");
}

TEST_CASE("parameters that break exactness or validity are refused") {
    CHECK_THROWS_AS(build_paper_dual_certificate(3, 1, 1, Rational(1, 2), 0), Error);
    try {
        build_paper_dual_certificate(4, 2, 1, 1, 0);
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SupportEmpty);
    }
    CHECK_THROWS_AS(build_smooth_dual_ndisj(6, 0), Error);
    CHECK_THROWS_AS(build_smooth_dual_ndisj(4, 0, Rational(1, 2)), Error);
}

TEST_CASE("smooth NDISJ certificate modes agree") {
    const auto c = build_smooth_dual_ndisj(4, 0);
    CHECK(c.family.exclude_disjoint);
    const auto a = verify_dual_certificate(c, VerifyMode::Exhaustive);
    const auto b = verify_dual_certificate(c, VerifyMode::Oracle);
    CHECK(a.max_weight == b.max_weight);
    CHECK(a.feasible == b.feasible);
}

TEST_CASE("scaling multiplies value and max weight") {
    const auto c = build_paper_dual_certificate(3, 1, 1, 1, 0);
    const auto d = scale(c, 4);
    CHECK(d.value() == 4 * c.value());
    CHECK(verify_dual_certificate(d, VerifyMode::Oracle).max_weight ==
          4 * verify_dual_certificate(c, VerifyMode::Oracle).max_weight);
    CHECK_THROWS_AS(scale(c, 0), Error);
}

TEST_CASE("json round trip preserves the certificate") {
    const auto c = build_paper_dual_certificate(4, 1, 2, 1, Rational(1, 2));
    const auto back = certificate_from_json(to_json(c));
    CHECK(back.value() == c.value());
    CHECK(back.phi.entries() == c.phi.entries());
    CHECK(back.psi.entries() == c.psi.entries());
    CHECK(back.family == c.family);
    CHECK(to_json(back).dump() == to_json(c).dump());
    CHECK_THROWS_AS(certificate_from_json(nlohmann::json::parse(R"({"format": "other"})")), Error);
}

TEST_CASE("LP duals give a feasible certificate of the same value") {
    const LPInstance lp = build_search_lp(2, 1, 1);
    const LPResult res = solve_full_enumeration(lp);
    const DualCertificate c = certificate_from_lp(lp, res);
    CHECK(c.value() == *res.exact_optimum);
    CHECK(c.signs_ok());
    CHECK(verify_dual_certificate(c, VerifyMode::Exhaustive).feasible);
    CHECK(verify_dual_certificate(c, VerifyMode::Oracle).feasible);
}

TEST_CASE("verification modes agree on random custom weights") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        DualCertificate c;
        c.universe = 2;
        c.phi = WeightMatrix<Rational>(2);
        c.psi = WeightMatrix<Rational>(2);
        const auto w = testing::random_weights(2, 3, 3, rng);
        for (const auto& [p, v] : w.entries()) (v > 0 ? c.phi : c.psi).set(p, v);
        const auto a = verify_dual_certificate(c, VerifyMode::Exhaustive);
        const auto b = verify_dual_certificate(c, VerifyMode::Oracle);
        CHECK(a.max_weight == b.max_weight);
        CHECK(to_double(a.max_weight) == testing::brute_force_max(w));
    }
}
