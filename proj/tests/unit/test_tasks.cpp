#include <catch2/catch_amalgamated.hpp>

#include "disjlab/errors.hpp"
#include "disjlab/tasks.hpp"

using namespace disjlab;

namespace {

InputPair pair_of(const char* x, const char* y) { return {BitString::parse(x), BitString::parse(y)}; }

}  // namespace

TEST_CASE("classification of NDISJ answers") {
    const TaskSpec t = TaskSpec::ndisj(2, 2);
    const InputPair in = pair_of("1001", "1010");  // block 0 meets, block 1 does not
    CHECK(t.classify(in, Output::of({1, 0})) == Verdict::Correct);
    CHECK(t.classify(in, Output::of({1, 1})) == Verdict::Wrong);
    CHECK(t.classify(in, Output::of({1})) == Verdict::Wrong);
    CHECK(t.classify(in, Output::rejected()) == Verdict::Reject);
    CHECK_THROWS_AS(t.classify(pair_of("10", "10"), Output::rejected()), Error);
}

TEST_CASE("classification of search answers") {
    const TaskSpec t = TaskSpec::search(3);
    CHECK(t.classify(pair_of("011", "111"), Output::of({2})) == Verdict::Correct);
    CHECK(t.classify(pair_of("011", "111"), Output::of({1})) == Verdict::Wrong);
    CHECK(t.classify(pair_of("011", "111"), Output::of({0})) == Verdict::Wrong);
    CHECK(t.classify(pair_of("100", "011"), Output::of({0})) == Verdict::Correct);
    CHECK(t.classify(pair_of("100", "011"), Output::rejected()) == Verdict::Correct);
    CHECK(t.classify(pair_of("110", "011"), Output::rejected()) == Verdict::Reject);

    const TaskSpec c = TaskSpec::search_choose(4, 2);
    CHECK(c.classify(pair_of("1101", "1011"), Output::of({1, 4})) == Verdict::Correct);
    CHECK(c.classify(pair_of("1101", "1011"), Output::of({1, 2})) == Verdict::Wrong);
    CHECK(c.classify(pair_of("1100", "1011"), Output::rejected()) == Verdict::Correct);
    CHECK_THROWS_AS(TaskSpec::search_choose(3, 4), Error);
    CHECK_THROWS_AS(TaskSpec::ndisj(40, 2), Error);
}

TEST_CASE("trivial protocols always succeed") {
    for (int n = 1; n <= 3; ++n) {
        const auto nd = success_probability(RandomizedProtocol::deterministic(trivial_ndisj(n)), TaskSpec::ndisj(n));
        CHECK(*nd.exact == 1);
        CHECK(nd.max_bits == n + 1);
        const auto s = success_probability(RandomizedProtocol::deterministic(trivial_search(n)), TaskSpec::search(n));
        CHECK(*s.exact == 1);
        CHECK(*s.max_wrong_exact == 0);
    }
    const auto two = success_probability(RandomizedProtocol::deterministic(trivial_search(2, 2)), TaskSpec::search(2, 2));
    CHECK(*two.exact == 1);
    const auto ch =
        success_probability(RandomizedProtocol::deterministic(trivial_search_choose(4, 2)), TaskSpec::search_choose(4, 2));
    CHECK(*ch.exact == 1);
}

TEST_CASE("constant mixtures have the expected success") {
    // Always rejecting is correct exactly on disjoint inputs: worst case 0.
    const auto rej = constant_mixture(2, {Output::rejected()});
    CHECK(*success_probability(rej, TaskSpec::search(2)).exact == 0);
    SuccessOptions uniform;
    uniform.aggregate = Aggregate::Uniform;
    // 9 of the 16 pairs of 2-bit strings are disjoint.
    CHECK(*success_probability(rej, TaskSpec::search(2), uniform).exact == Rational(9, 16));
    const auto half = constant_mixture(1, {Output::of({1}), Output::of({0})});
    CHECK(*success_probability(half, TaskSpec::search(1)).exact == Rational(1, 2));
}

TEST_CASE("monte carlo estimates bracket the exact value") {
    const auto half = constant_mixture(1, {Output::of({1}), Output::of({0})});
    SuccessOptions mc;
    mc.mode = SuccessMode::MonteCarlo;
    mc.seed = 5;
    mc.trials = 400;
    const auto r = success_probability(half, TaskSpec::search(1), mc);
    CHECK(r.ci_low <= 0.5);
    CHECK(r.ci_high >= 0.5);
    CHECK_FALSE(r.exact.has_value());
    const auto again = success_probability(half, TaskSpec::search(1), mc);
    CHECK(again.estimate == r.estimate);
}

TEST_CASE("verified protocols are never wrong") {
    // A guesser that names coordinate 1 or 2 at random is often wrong.
    const auto guess = constant_mixture(2, {Output::of({1}), Output::of({2})});
    const TaskSpec t = TaskSpec::search(2);
    CHECK(*success_probability(guess, t).max_wrong_exact > 0);
    for (auto mode : {CheckMode::Explicit, CheckMode::Strict2Bit}) {
        const auto v = make_verified(guess, t, mode);
        const auto r = success_probability(v, t);
        CHECK(*r.max_wrong_exact == 0);
        CHECK(v.cost() == guess.cost() + verification_overhead(t, mode));
    }
    CHECK_THROWS_AS(make_verified(guess, TaskSpec::ndisj(2), CheckMode::Explicit), Error);
}

TEST_CASE("leaves of a deterministic protocol are rectangles") {
    const TaskSpec t = TaskSpec::search(2);
    const LeafReport r = leaf_rectangle_check(trivial_search(2), t);
    CHECK(r.ok());
    CHECK(r.partitions);
    for (const auto& leaf : r.leaves) {
        if (leaf.accepting && leaf.reaching > 0) CHECK(leaf.witness.has_value());
    }
    CHECK(is_accepting(t, Output::of({1})));
    CHECK_FALSE(is_accepting(t, Output::rejected()));
    CHECK_FALSE(is_accepting(TaskSpec::ndisj(2), Output::of({0})));
}

TEST_CASE("a protocol's leaves are a feasible point of the search LP") {
    const auto p = RandomizedProtocol::deterministic(trivial_search(2));
    const BridgeReport b = protocol_to_lp(p, TaskSpec::search(2));
    CHECK(b.check.feasible);
    CHECK(b.success == 1);
    CHECK(b.within_bound);
    CHECK(b.check.cost <= b.cost_bound);
    Rational total = 0;
    for (const auto& [r, w] : protocol_lp_solution(p, TaskSpec::search(2))) total += w;
    CHECK(total == b.check.cost);
}

TEST_CASE("input enumeration respects the cap") {
    CHECK(all_input_pairs(2).size() == 16);
    CHECK_THROWS_AS(all_input_pairs(8, 100), Error);
}
