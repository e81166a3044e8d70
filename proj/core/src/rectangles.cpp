#include "disjlab/rectangles.hpp"

#include <algorithm>

namespace disjlab {

namespace {

void normalize(std::vector<BitString>& v, int n) {
    for (const auto& s : v) {
        if (s.n != n) throw Error(ErrorKind::DimensionMismatch, "rectangle line over a different universe");
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Rectangle::Rectangle(int n, std::vector<BitString> rows, std::vector<BitString> cols)
    : n_(n), rows_(std::move(rows)), cols_(std::move(cols)) {
    normalize(rows_, n_);
    normalize(cols_, n_);
}

std::vector<BitString> all_strings(int n) {
    if (n > 24) throw Error(ErrorKind::CapExceeded, "refusing to list 2^" + std::to_string(n) + " strings");
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < (1ULL << n); ++b) out.emplace_back(b, n);
    return out;
}

Rectangle Rectangle::full(int n) {
    auto s = all_strings(n);
    return Rectangle(n, s, s);
}

Rectangle Rectangle::containing(int n, std::uint64_t sub) {
    std::vector<BitString> lines;
    for (const auto& s : all_strings(n)) {
        if ((s.bits & sub) == sub) lines.push_back(s);
    }
    return Rectangle(n, lines, lines);
}

std::uint64_t Rectangle::common_mask() const {
    std::uint64_t m = universe_mask(n_);
    for (const auto& r : rows_) m &= r.bits;
    for (const auto& c : cols_) m &= c.bits;
    return m;
}

Rectangle Rectangle::restrict_to_superset_of(std::uint64_t sub) const {
    std::vector<BitString> r;
    std::vector<BitString> c;
    for (const auto& x : rows_) {
        if ((x.bits & sub) == sub) r.push_back(x);
    }
    for (const auto& y : cols_) {
        if ((y.bits & sub) == sub) c.push_back(y);
    }
    return Rectangle(n_, std::move(r), std::move(c));
}

std::string Rectangle::str() const {
    auto side = [](const std::vector<BitString>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += v[i].str();
        }
        return s + "}";
    };
    return side(rows_) + "x" + side(cols_);
}

std::string WitnessSet::str() const {
    std::string s = "{";
    bool first = true;
    for (int c : coordinates()) {
        if (!first) s += ",";
        s += std::to_string(c + 1);
        first = false;
    }
    return s + "}";
}

std::vector<std::uint64_t> k_subsets_lex(int n, int k) {
    auto out = masks_of_weight(n, k);
    // Equal-size sets: the lowest coordinate of the symmetric difference
    // belongs to the lexicographically smaller one.
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
        const std::uint64_t diff = a ^ b;
        return diff != 0 && ((a >> std::countr_zero(diff)) & 1U);
    });
    return out;
}

std::optional<WitnessSet> witness_set(const Rectangle& r, int k) {
    if (r.empty()) throw Error(ErrorKind::Parameter, "witness_set needs a nonempty rectangle");
    if (k < 0) throw Error(ErrorKind::Range, "negative witness size");
    const std::uint64_t common = r.common_mask();
    if (std::popcount(common) < k) return std::nullopt;
    return WitnessSet{lowest_coordinates(common, k), r.n()};
}

Rational mu_mass(const MuDistribution& mu, const Rectangle& r) {
    if (r.empty()) return 0;
    if (r.n() != mu.params().n) throw Error(ErrorKind::DimensionMismatch, "rectangle and mu over different universes");
    const int m = mu.params().m;
    const int k = mu.params().k;
    std::uint64_t hits = 0;
    for (const auto& x : r.rows()) {
        if (x.popcount() != m) continue;
        for (const auto& y : r.cols()) {
            if (y.popcount() == m && std::popcount(x.bits & y.bits) == k) ++hits;
        }
    }
    return Rational(BigInt(std::to_string(hits))) * mu.point_mass();
}

DecompositionReport decompose_by_witness(const Rectangle& r, int k, int m, std::uint64_t cap) {
    const int n = r.n();
    DecompositionReport report;
    report.params = MuParams{k + 1, n, m};
    if (k < 0 || !report.params.valid()) {
        throw Error(ErrorKind::SupportEmpty, "mu" + to_string(report.params) + " has empty support");
    }
    if (r.size() > cap) throw Error(ErrorKind::CapExceeded, "rectangle too large to evaluate exactly");
    const MuDistribution mu(report.params);
    report.lhs = mu_mass(mu, r);
    Rational total = 0;
    for (std::uint64_t sub : k_subsets_lex(n, k)) {
        WitnessPart part{WitnessSet{sub, n}, r.restrict_to_superset_of(sub), 0};
        part.mass = mu_mass(mu, part.rect);
        total += part.mass;
        report.parts.push_back(std::move(part));
    }
    report.rhs = total / (k + 1);
    report.rhs.canonicalize();
    return report;
}

RectangleRange::RectangleRange(int rows, int cols, std::uint64_t cap) : cols_(cols) {
    if (rows < 0 || cols < 0) throw Error(ErrorKind::Range, "negative dimension");
    if (rows + cols >= 63 || (1ULL << (rows + cols)) > cap) {
        throw Error(ErrorKind::CapExceeded, "2^" + std::to_string(rows + cols) + " rectangles exceed cap " +
                                                std::to_string(cap));
    }
    count_ = 1ULL << (rows + cols);
}

RectangleRange enumerate_rectangles(int rows, int cols, std::uint64_t cap) { return RectangleRange(rows, cols, cap); }

Rectangle make_rectangle(int n, const std::vector<BitString>& row_labels, const std::vector<BitString>& col_labels,
                         SubmatrixMask m) {
    std::vector<BitString> r;
    std::vector<BitString> c;
    for (std::size_t i = 0; i < row_labels.size(); ++i) {
        if ((m.rows >> i) & 1U) r.push_back(row_labels[i]);
    }
    for (std::size_t j = 0; j < col_labels.size(); ++j) {
        if ((m.cols >> j) & 1U) c.push_back(col_labels[j]);
    }
    return Rectangle(n, std::move(r), std::move(c));
}

}  // namespace disjlab
