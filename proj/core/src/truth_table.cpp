#include "disjlab/truth_table.hpp"

#include "disjlab/errors.hpp"

#include <bit>
#include <sstream>

namespace disjlab {

TruthTable::TruthTable(std::string name, int n, const std::function<bool(const BitString&, const BitString&)>& f)
    : name_(std::move(name)), n_(n) {
    if (n < 0 || n > 10) throw Error(ErrorKind::Range, "truth tables support 0 <= n <= 10");
    const std::uint64_t side = 1ULL << n;
    values_.assign(side * side, 0);
    for (std::uint64_t x = 0; x < side; ++x) {
        for (std::uint64_t y = 0; y < side; ++y) {
            values_[(x << n) | y] = f(BitString(x, n), BitString(y, n)) ? 1 : 0;
        }
    }
}

std::uint64_t TruthTable::ones() const {
    std::uint64_t c = 0;
    for (auto v : values_) c += v;
    return c;
}

TruthTable TruthTable::parse(std::istream& in, std::string name) {
    int n = -1;
    if (!(in >> n) || n < 0 || n > 10) throw Error(ErrorKind::Parse, "truth table must start with 0 <= n <= 10");
    const std::uint64_t side = 1ULL << n;
    std::vector<std::string> lines;
    std::string line;
    while (lines.size() < side && in >> line) lines.push_back(line);
    if (lines.size() != side) throw Error(ErrorKind::Parse, "truth table needs 2^n rows");
    for (const auto& l : lines) {
        if (l.size() != side || l.find_first_not_of("01") != std::string::npos) {
            throw Error(ErrorKind::Parse, "truth table rows must have 2^n characters in {0,1}");
        }
    }
    return TruthTable(std::move(name), n, [&](const BitString& x, const BitString& y) {
        return lines[x.lex_index()][y.lex_index()] == '1';
    });
}

std::string TruthTable::serialize() const {
    std::ostringstream out;
    out << n_ << "\n";
    const std::uint64_t side = 1ULL << n_;
    for (std::uint64_t r = 0; r < side; ++r) {
        const BitString x = BitString::from_lex_index(r, n_);
        for (std::uint64_t c = 0; c < side; ++c) out << ((*this)(x, BitString::from_lex_index(c, n_)) ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

TruthTable make_family(std::string_view family, int n) {
    using F = std::function<bool(const BitString&, const BitString&)>;
    F f;
    if (family == "NDISJ") {
        f = [](const BitString& x, const BitString& y) { return (x.bits & y.bits) != 0; };
    } else if (family == "DISJ") {
        f = [](const BitString& x, const BitString& y) { return (x.bits & y.bits) == 0; };
    } else if (family == "EQ") {
        f = [](const BitString& x, const BitString& y) { return x.bits == y.bits; };
    } else if (family == "IP") {
        f = [](const BitString& x, const BitString& y) { return (std::popcount(x.bits & y.bits) & 1) != 0; };
    } else if (family == "AND") {
        f = [n](const BitString& x, const BitString& y) {
            return x.bits == universe_mask(n) && y.bits == universe_mask(n);
        };
    } else if (family == "ZERO") {
        f = [](const BitString&, const BitString&) { return false; };
    } else if (family == "ONE") {
        f = [](const BitString&, const BitString&) { return true; };
    } else {
        throw Error(ErrorKind::Parameter, "unknown function family '" + std::string(family) + "'");
    }
    return TruthTable(std::string(family), n, f);
}

}  // namespace disjlab
