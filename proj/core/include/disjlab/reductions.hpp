#pragma once

#include "disjlab/protocol.hpp"
#include "disjlab/tasks.hpp"

#include <cstdint>
#include <string>

namespace disjlab {

struct ReductionConfig {
    int s = 0;           // halving rounds
    double alpha = 0;    // output fraction; 0 picks 4K/k
    std::uint64_t seed = 0;
    /// All N! permutations are used up to this count; beyond it a seeded sample.
    std::uint64_t max_permutations = 5040;
    std::uint64_t permutation_samples = 256;
    std::uint64_t max_branches = 1ULL << 16;
};

struct KfoldReduction {
    RandomizedProtocol protocol;
    TaskSpec task;
    double alpha = 0;
    /// (1 - alpha/4)^(alpha k / 4): multiply by the base success for the bound.
    double bound_factor = 1;
    /// (1 - alpha/4)^(alpha K), the weaker form.
    double alt_factor = 1;
    /// Probability that K fixed coordinates land in K distinct blocks.
    Rational distinct_blocks;
    std::size_t permutations = 0;
    bool all_permutations = true;
    bool degenerate = false;
    std::string note;
};

/// Search(N choose K) from a Search^k protocol on k blocks of n = N/k: permute
/// the coordinates with public coins, run the block protocol, and report the
/// first K block answers mapped back; reject if fewer than K blocks answered.
KfoldReduction reduce_search_from_kfold(const RandomizedProtocol& p, const TaskSpec& base, int K, int N,
                                        const ReductionConfig& cfg = {});

/// Bits of the composed Search^k protocol, term by term.
struct HalvingAccounting {
    int base_cost = 0;
    int s = 0;
    int k = 0;
    int n = 0;
    int part = 0;        // L = ceil(n / 2^s)
    int padded = 0;      // L * 2^s
    int probes = 0;      // (s+1) * base_cost
    int bookkeeping = 0; // s * k, the chosen half per block and round
    int exchange = 0;    // k * L, Alice's remaining part per block
    int answer = 0;      // k * ceil(log2(L+1)), Bob's position per block
    int total = 0;

    std::string str() const;
};

HalvingAccounting halving_accounting(int base_cost, int n, int k, int s);

struct NdisjReduction {
    RandomizedProtocol protocol;
    TaskSpec task;
    HalvingAccounting accounting;
    int exponent = 1;  // success >= sigma^exponent
};

/// Search^k from an NDISJ^k protocol: one probe to find intersecting blocks,
/// s halving probes on the left halves, then the trivial protocol on the
/// remaining parts. Block sizes are padded with zero coordinates.
NdisjReduction reduce_ndisj_to_search(const RandomizedProtocol& p, const TaskSpec& base, int s,
                                      const ReductionConfig& cfg = {});

}  // namespace disjlab
