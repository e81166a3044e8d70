#include <catch2/catch_amalgamated.hpp>

#include "disjlab/errors.hpp"
#include "disjlab/reductions.hpp"

using namespace disjlab;

namespace {

// Runs `tree` with probability sigma and rejects otherwise.
RandomizedProtocol diluted(const ProtocolTree& tree, const Rational& sigma) {
    if (sigma == 1) return RandomizedProtocol::deterministic(tree);
    return RandomizedProtocol(
        {{sigma, tree}, {1 - sigma, ProtocolTree::constant(tree.input_bits(), Output::rejected())}});
}

}  // namespace

TEST_CASE("halving accounting adds up its terms") {
    const HalvingAccounting a = halving_accounting(5, 8, 1, 2);
    CHECK(a.part == 2);
    CHECK(a.padded == 8);
    CHECK(a.probes == 15);
    CHECK(a.bookkeeping == 2);
    CHECK(a.exchange == 2);
    CHECK(a.answer == 2);
    CHECK(a.total == 21);
    const HalvingAccounting pad = halving_accounting(4, 5, 2, 1);
    CHECK(pad.part == 3);
    CHECK(pad.padded == 6);
    CHECK_THROWS_AS(halving_accounting(1, 2, 1, 3), Error);
    CHECK_THROWS_AS(halving_accounting(1, 2, 1, -1), Error);
}

TEST_CASE("halving reduction keeps success and matches the accounting") {
    const int n = 4;
    for (int k = 1; k <= 2; ++k) {
        // Every input for one block; a strided grid for two.
        SuccessOptions opt;
        if (k == 2) {
            std::vector<InputPair> in;
            for (std::uint64_t x = 0; x < 256; x += 7) {
                for (std::uint64_t y = 0; y < 256; y += 5) in.emplace_back(BitString(x, 8), BitString(y, 8));
            }
            opt.inputs = in;
        }
        for (int s = 0; s <= 2; ++s) {
            const NdisjReduction red =
                reduce_ndisj_to_search(RandomizedProtocol::deterministic(trivial_ndisj(n, k)), TaskSpec::ndisj(n, k), s);
            CHECK(red.task.kind == TaskKind::SearchK);
            const auto rep = success_probability(red.protocol, red.task, opt);
            INFO("k " << k << " s " << s);
            CHECK(*rep.exact == 1);
            CHECK(rep.max_bits == red.accounting.total);
        }
    }
}

TEST_CASE("halving success degrades by at most a power of sigma") {
    const Rational sigma(1, 2);
    const NdisjReduction red = reduce_ndisj_to_search(diluted(trivial_ndisj(2), sigma), TaskSpec::ndisj(2), 1);
    Rational bound = 1;
    for (int i = 0; i < red.exponent; ++i) bound *= sigma;
    CHECK(*success_probability(red.protocol, red.task).exact >= bound);
}

TEST_CASE("k-fold reduction meets its bound") {
    for (const Rational sigma : {Rational(1), Rational(1, 2)}) {
        const KfoldReduction red =
            reduce_search_from_kfold(diluted(trivial_search(2, 2), sigma), TaskSpec::search(2, 2), 1, 4);
        CHECK(red.task.kind == TaskKind::SearchChoose);
        CHECK(red.distinct_blocks == 1);
        CHECK(red.all_permutations);
        const auto rep = success_probability(red.protocol, red.task);
        CHECK(rep.exact->get_d() + 1e-12 >= std::max(red.bound_factor, red.alt_factor) * sigma.get_d());
    }
}

TEST_CASE("distinct-block probability for two coordinates") {
    const KfoldReduction red =
        reduce_search_from_kfold(RandomizedProtocol::deterministic(trivial_search(2, 2)), TaskSpec::search(2, 2), 2, 4);
    CHECK(red.distinct_blocks == Rational(2, 3));
}

TEST_CASE("reductions check their inputs") {
    const auto nd = RandomizedProtocol::deterministic(trivial_ndisj(2));
    const auto se = RandomizedProtocol::deterministic(trivial_search(2, 2));
    CHECK_THROWS_AS(reduce_ndisj_to_search(se, TaskSpec::search(2, 2), 1), Error);
    CHECK_THROWS_AS(reduce_search_from_kfold(nd, TaskSpec::ndisj(2), 1, 2), Error);
    CHECK_THROWS_AS(reduce_search_from_kfold(se, TaskSpec::search(2, 2), 1, 5), Error);
    CHECK_THROWS_AS(reduce_search_from_kfold(se, TaskSpec::search(2, 2), 5, 4), Error);
}
