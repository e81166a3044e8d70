#pragma once

#include "disjlab/bitstring.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace disjlab {

/// A Boolean function on {0,1}^n x {0,1}^n.
class TruthTable {
public:
    TruthTable() = default;
    TruthTable(std::string name, int n, const std::function<bool(const BitString&, const BitString&)>& f);

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    bool operator()(const BitString& x, const BitString& y) const {
        return values_[(x.bits << n_) | y.bits] != 0;
    }
    bool operator()(const InputPair& p) const { return (*this)(p.x, p.y); }
    std::uint64_t ones() const;

    /// First line n, then 2^n lines of 2^n characters; rows and columns in
    /// lexicographic order of the strings.
    static TruthTable parse(std::istream& in, std::string name = "file");
    std::string serialize() const;

private:
    std::string name_;
    int n_ = 0;
    std::vector<std::uint8_t> values_;
};

/// NDISJ, DISJ, EQ, IP (inner product mod 2), AND (x = y = 1^n), ZERO, ONE.
TruthTable make_family(std::string_view family, int n);

}  // namespace disjlab
