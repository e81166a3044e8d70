#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace disjlab {

inline constexpr int kMaxUniverse = 63;

/// An n-bit string identified with the subset of {0,...,n-1} it indicates.
/// Coordinate c is bit c of `bits`; the textual form writes coordinate 0
/// first, so "10" is the set {0} and "01" is {1}.
struct BitString {
    std::uint64_t bits = 0;
    int n = 0;

    BitString() = default;
    BitString(std::uint64_t b, int len);

    static BitString parse(std::string_view text);
    /// The string at position `index` of the lexicographic order on {0,1}^n.
    static BitString from_lex_index(std::uint64_t index, int len);

    std::string str() const;
    std::uint64_t lex_index() const;
    int popcount() const { return std::popcount(bits); }
    bool test(int c) const { return (bits >> c) & 1U; }
    std::vector<int> coordinates() const;

    friend auto operator<=>(const BitString&, const BitString&) = default;
};

struct InputPair {
    BitString x;
    BitString y;

    InputPair() = default;
    InputPair(BitString a, BitString b);

    int n() const { return x.n; }
    int intersection_size() const { return std::popcount(x.bits & y.bits); }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }

    friend auto operator<=>(const InputPair&, const InputPair&) = default;
};

inline std::uint64_t universe_mask(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

/// All masks over an n-universe with exactly `weight` bits, ascending.
std::vector<std::uint64_t> masks_of_weight(int n, int weight);

/// Calls f(mask) for every `weight`-subset of the set bits of `of`, in ascending order.
template <class F>
void for_each_subset_of_weight(std::uint64_t of, int weight, F&& f) {
    const int total = std::popcount(of);
    if (weight < 0 || weight > total) return;
    std::vector<int> positions;
    for (std::uint64_t m = of; m; m &= m - 1) positions.push_back(std::countr_zero(m));
    if (weight == 0) {
        f(std::uint64_t{0});
        return;
    }
    // Gosper's hack over indices into `positions`.
    std::uint64_t sel = (1ULL << weight) - 1;
    const std::uint64_t limit = 1ULL << total;
    while (sel < limit) {
        std::uint64_t mask = 0;
        for (std::uint64_t s = sel; s; s &= s - 1) mask |= 1ULL << positions[std::countr_zero(s)];
        f(mask);
        const std::uint64_t c = sel & (~sel + 1);
        const std::uint64_t r = sel + c;
        sel = (((r ^ sel) >> 2) / c) | r;
    }
}

/// Deletes the coordinates in `removed` and compacts the rest, preserving order.
BitString remove_coordinates(const BitString& s, std::uint64_t removed);

/// The `count` lowest set coordinates of `mask`.
std::uint64_t lowest_coordinates(std::uint64_t mask, int count);

}  // namespace disjlab
