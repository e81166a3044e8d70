#include <catch2/catch_amalgamated.hpp>

#include "disjlab/errors.hpp"
#include "disjlab/protocol.hpp"

using namespace disjlab;

namespace {

// One-bit AND: Alice sends x, Bob answers x AND y.
ProtocolTree and_tree() {
    return ProtocolTree("and", 1, 2, [](Channel& ch) {
        const bool a = ch.send(Player::Alice, [](const BitString& x) { return x.test(0); });
        const bool b = ch.send(Player::Bob, [a](const BitString& y) { return a && y.test(0); });
        return Output::of({b ? 1 : 0});
    });
}

InputPair bits(std::uint64_t x, std::uint64_t y, int n = 1) { return {BitString(x, n), BitString(y, n)}; }

}  // namespace

TEST_CASE("running a tree records the transcript") {
    const ProtocolTree t = and_tree();
    const RunResult r = run_tree(t, bits(1, 1));
    CHECK(r.output == Output::of({1}));
    CHECK(r.transcript == "11");
    CHECK(r.bits == 2);
    CHECK(run_tree(t, bits(1, 0)).transcript == "10");
    CHECK(run_tree(t, bits(0, 1)).output == Output::of({0}));
    CHECK_THROWS_AS(run_tree(t, bits(0, 0, 2)), Error);
}

TEST_CASE("exceeding the declared cost is an error") {
    const ProtocolTree t("chatty", 1, 1, [](Channel& ch) {
        ch.send(Player::Alice, [](const BitString&) { return true; });
        ch.send(Player::Alice, [](const BitString&) { return true; });
        return Output::rejected();
    });
    CHECK_THROWS_AS(run_tree(t, bits(0, 0)), Error);
}

TEST_CASE("materialized trees behave like the program") {
    const ProtocolTree t = and_tree();
    const ExplicitTree e = t.materialize();
    e.validate();
    CHECK(e.depth() == 2);
    CHECK(e.leaf_count() == 4);
    const ProtocolTree back = ProtocolTree::from_explicit("and", e);
    for (std::uint64_t x = 0; x < 2; ++x) {
        for (std::uint64_t y = 0; y < 2; ++y) {
            CHECK(run_tree(back, bits(x, y)).output == run_tree(t, bits(x, y)).output);
            CHECK(run_tree(back, bits(x, y)).transcript == run_tree(t, bits(x, y)).transcript);
        }
    }
    const ExplicitTree j = ExplicitTree::from_json(e.to_json());
    CHECK(j.to_json() == e.to_json());
}

TEST_CASE("malformed trees are rejected") {
    ExplicitTree e = and_tree().materialize();
    e.nodes[0].child[1] = 0;
    CHECK_THROWS_AS(e.validate(), Error);
    ExplicitTree f = and_tree().materialize();
    f.nodes[0].message.pop_back();
    CHECK_THROWS_AS(f.validate(), Error);
    CHECK_THROWS_AS(ExplicitTree::from_json(nlohmann::json::parse("[1,2]")), Error);
}

TEST_CASE("mapped channels transform each side locally") {
    const ProtocolTree t("swap", 2, 2, [](Channel& base) {
        MappedChannel ch(
            base, [](const BitString& x) { return BitString(x.bits >> 1, 1); },
            [](const BitString& y) { return BitString(y.bits & 1, 1); });
        const bool a = ch.send(Player::Alice, [](const BitString& x) { return x.test(0); });
        const bool b = ch.send(Player::Bob, [](const BitString& y) { return y.test(0); });
        return Output::of({a ? 1 : 0, b ? 1 : 0});
    });
    CHECK(run_tree(t, bits(0b10, 0b01, 2)).output == Output::of({1, 1}));
    CHECK(run_tree(t, bits(0b01, 0b10, 2)).output == Output::of({0, 0}));
}

TEST_CASE("randomized protocols need a probability distribution") {
    const ProtocolTree a = ProtocolTree::constant(1, Output::rejected());
    const ProtocolTree b = ProtocolTree::constant(1, Output::of({1}));
    const RandomizedProtocol p({{Rational(1, 4), a}, {Rational(3, 4), b}});
    CHECK(p.size() == 2);
    CHECK(p.cost() == 0);
    CHECK(run_protocol(p, bits(0, 0), 1).output == Output::of({1}));
    CHECK_THROWS_AS(run_protocol(p, bits(0, 0), 2), Error);
    CHECK_THROWS_AS(RandomizedProtocol({{Rational(1, 2), a}}), Error);
    CHECK_THROWS_AS(RandomizedProtocol({{Rational(0), a}, {Rational(1), b}}), Error);
    CHECK_THROWS_AS(RandomizedProtocol({}), Error);
    const ProtocolTree wide = ProtocolTree::constant(2, Output::rejected());
    CHECK_THROWS_AS(RandomizedProtocol({{Rational(1, 2), a}, {Rational(1, 2), wide}}), Error);
}

TEST_CASE("outputs print and round-trip") {
    CHECK(Output::rejected().str() == "reject");
    CHECK(Output::of({2, 0}).str() == "[2,0]");
    CHECK(Output::from_json(Output::of({3}).to_json()) == Output::of({3}));
    CHECK(Output::from_json(Output::rejected().to_json()) == Output::rejected());
}
