#include "disjlab/bitstring.hpp"

#include "disjlab/errors.hpp"

namespace disjlab {

BitString::BitString(std::uint64_t b, int len) : bits(b), n(len) {
    if (len < 0 || len > kMaxUniverse) throw Error(ErrorKind::Range, "universe size out of range");
    if (b & ~universe_mask(len)) throw Error(ErrorKind::Range, "bits outside the universe");
}

BitString BitString::parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(kMaxUniverse)) throw Error(ErrorKind::Parse, "bit string too long");
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            b |= 1ULL << i;
        } else if (text[i] != '0') {
            throw Error(ErrorKind::Parse, "bad bit string '" + std::string(text) + "'");
        }
    }
    return BitString(b, static_cast<int>(text.size()));
}

BitString BitString::from_lex_index(std::uint64_t index, int len) {
    std::uint64_t b = 0;
    for (int j = 0; j < len; ++j) {
        if ((index >> (len - 1 - j)) & 1U) b |= 1ULL << j;
    }
    return BitString(b, len);
}

std::uint64_t BitString::lex_index() const {
    std::uint64_t index = 0;
    for (int j = 0; j < n; ++j) index = (index << 1) | (test(j) ? 1U : 0U);
    return index;
}

std::string BitString::str() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if (test(i)) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

std::vector<int> BitString::coordinates() const {
    std::vector<int> out;
    for (std::uint64_t m = bits; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

InputPair::InputPair(BitString a, BitString b) : x(a), y(b) {
    if (a.n != b.n) throw Error(ErrorKind::DimensionMismatch, "pair strings differ in length");
}

std::vector<std::uint64_t> masks_of_weight(int n, int weight) {
    std::vector<std::uint64_t> out;
    for_each_subset_of_weight(universe_mask(n), weight, [&](std::uint64_t m) { out.push_back(m); });
    return out;
}

BitString remove_coordinates(const BitString& s, std::uint64_t removed) {
    std::uint64_t out = 0;
    int j = 0;
    for (int i = 0; i < s.n; ++i) {
        if ((removed >> i) & 1U) continue;
        if (s.test(i)) out |= 1ULL << j;
        ++j;
    }
    return BitString(out, j);
}

std::uint64_t lowest_coordinates(std::uint64_t mask, int count) {
    std::uint64_t out = 0;
    for (int i = 0; i < count && mask; ++i) {
        const std::uint64_t low = mask & (~mask + 1);
        out |= low;
        mask ^= low;
    }
    return out;
}

}  // namespace disjlab
