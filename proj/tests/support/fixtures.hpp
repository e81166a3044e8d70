#pragma once

#include "disjlab/bitstring.hpp"
#include "disjlab/rational.hpp"
#include "disjlab/rectangles.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace disjlab::testing {

/// Block pairs for one n-bit block: every disjoint shape we care about, each
/// single common coordinate, full overlap, and seeded random pairs.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> block_strata(int n, std::uint64_t seed, int random_pairs) {
    const std::uint64_t all = universe_mask(n);
    std::set<std::pair<std::uint64_t, std::uint64_t>> s;
    s.insert({0, 0});
    s.insert({all, 0});
    s.insert({0, all});
    s.insert({all, all});
    for (int c = 0; c < n; ++c) {
        const std::uint64_t bit = 1ULL << c;
        s.insert({bit, bit});
        s.insert({all, bit});
        s.insert({bit, all & ~(bit - 1)});
        s.insert({all & ~bit, bit});
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(s.size()) < 4 * n + 4 + random_pairs) {
        s.insert({rng() & all, rng() & all});
    }
    return {s.begin(), s.end()};
}

/// Cross product of block strata over k blocks; block b occupies coordinates [b n, (b+1) n).
inline std::vector<InputPair> stratified_inputs(int n, int k, std::uint64_t seed, int random_pairs) {
    const auto strata = block_strata(n, seed, random_pairs);
    std::vector<InputPair> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        std::uint64_t x = 0;
        std::uint64_t y = 0;
        for (int b = 0; b < k; ++b) {
            x |= strata[idx[static_cast<std::size_t>(b)]].first << (b * n);
            y |= strata[idx[static_cast<std::size_t>(b)]].second << (b * n);
        }
        out.emplace_back(BitString(x, n * k), BitString(y, n * k));
        int b = 0;
        while (b < k && ++idx[static_cast<std::size_t>(b)] == strata.size()) {
            idx[static_cast<std::size_t>(b)] = 0;
            ++b;
        }
        if (b == k) break;
    }
    return out;
}

/// Random sparse weights in {-q..q}/q on a subset of rows and columns.
inline WeightMatrix<Rational> random_weights(int n, int rows, int cols, std::mt19937_64& rng, int q = 4) {
    auto pick = [&](int count) {
        std::vector<std::uint64_t> all(1ULL << n);
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(count));
        return all;
    };
    const auto r = pick(rows);
    const auto c = pick(cols);
    std::uniform_int_distribution<int> w(-q, q);
    WeightMatrix<Rational> m(n);
    for (auto x : r) {
        for (auto y : c) {
            Rational v(w(rng), q);
            v.canonicalize();
            m.set(InputPair(BitString(x, n), BitString(y, n)), v);
        }
    }
    return m;
}

/// Maximum rectangle weight by brute force over every row and column subset
/// of {0,1}^n. Weights with power-of-two denominators sum exactly in double.
inline double brute_force_max(const WeightMatrix<Rational>& w) {
    const int n = w.n();
    const std::size_t side = std::size_t{1} << n;
    std::vector<double> dense(side * side, 0.0);
    for (const auto& [p, v] : w.entries()) dense[p.x.bits * side + p.y.bits] = to_double(v);
    double best = 0;
    for (SubmatrixMask mask : enumerate_rectangles(static_cast<int>(side), static_cast<int>(side))) {
        double sum = 0;
        for (std::size_t x = 0; x < side; ++x) {
            if (!((mask.rows >> x) & 1U)) continue;
            for (std::size_t y = 0; y < side; ++y) {
                if ((mask.cols >> y) & 1U) sum += dense[x * side + y];
            }
        }
        if (sum > best) best = sum;
    }
    return best;
}

}  // namespace disjlab::testing
