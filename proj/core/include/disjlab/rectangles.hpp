#pragma once

#include "disjlab/bitstring.hpp"
#include "disjlab/combinatorics.hpp"
#include "disjlab/errors.hpp"
#include "disjlab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace disjlab {

inline constexpr std::uint64_t kDefaultOracleRowSubsetCap = 1ULL << 16;
inline constexpr std::uint64_t kDefaultRectangleEnumerationCap = 1ULL << 26;

/// A product set rows x cols of Alice and Bob inputs over an n-universe.
class Rectangle {
public:
    Rectangle() = default;
    Rectangle(int n, std::vector<BitString> rows, std::vector<BitString> cols);

    static Rectangle full(int n);
    static Rectangle empty(int n) { return Rectangle(n, {}, {}); }
    /// {x : sub ⊆ x} x {y : sub ⊆ y}.
    static Rectangle containing(int n, std::uint64_t sub);

    int n() const { return n_; }
    const std::vector<BitString>& rows() const { return rows_; }
    const std::vector<BitString>& cols() const { return cols_; }

    bool empty() const { return rows_.empty() || cols_.empty(); }
    std::uint64_t size() const { return empty() ? 0 : rows_.size() * cols_.size(); }
    bool has_row(const BitString& x) const { return std::binary_search(rows_.begin(), rows_.end(), x); }
    bool has_col(const BitString& y) const { return std::binary_search(cols_.begin(), cols_.end(), y); }
    bool contains(const InputPair& p) const { return has_row(p.x) && has_col(p.y); }

    /// Coordinates set in every row and every column.
    std::uint64_t common_mask() const;

    /// Keeps only the rows and columns that contain `sub`.
    Rectangle restrict_to_superset_of(std::uint64_t sub) const;

    std::string str() const;

    friend bool operator==(const Rectangle&, const Rectangle&) = default;

private:
    int n_ = 0;
    std::vector<BitString> rows_;
    std::vector<BitString> cols_;
};

/// A size-k coordinate set shared by every pair of a rectangle.
struct WitnessSet {
    std::uint64_t mask = 0;
    int n = 0;

    int size() const { return std::popcount(mask); }
    std::vector<int> coordinates() const { return BitString(mask, n).coordinates(); }
    /// 1-based, e.g. "{1,3}".
    std::string str() const;

    friend bool operator==(const WitnessSet&, const WitnessSet&) = default;
};

/// Sparse signed weights on input pairs.
template <class T>
class WeightMatrix {
public:
    explicit WeightMatrix(int n = 0) : n_(n) {}

    int n() const { return n_; }
    const std::map<InputPair, T>& entries() const { return entries_; }

    void set(const InputPair& p, T w) {
        check(p);
        if (w == 0) {
            entries_.erase(p);
        } else {
            entries_[p] = std::move(w);
        }
    }
    void add(const InputPair& p, const T& w) {
        check(p);
        T v = at(p) + w;
        set(p, std::move(v));
    }
    T at(const InputPair& p) const {
        auto it = entries_.find(p);
        return it == entries_.end() ? T(0) : it->second;
    }

    T total_positive() const {
        T s(0);
        for (const auto& [p, w] : entries_) {
            if (w > 0) s += w;
        }
        return s;
    }
    T total_negative() const {
        T s(0);
        for (const auto& [p, w] : entries_) {
            if (w < 0) s += w;
        }
        return s;
    }

private:
    void check(const InputPair& p) const {
        if (p.n() != n_) throw Error(ErrorKind::DimensionMismatch, "pair universe differs from weight matrix");
    }

    int n_;
    std::map<InputPair, T> entries_;
};

template <class T>
T rect_weight(const WeightMatrix<T>& w, const Rectangle& r) {
    T s(0);
    if (r.empty()) return s;
    if (w.n() != r.n()) throw Error(ErrorKind::DimensionMismatch, "weights and rectangle over different universes");
    for (const auto& [p, v] : w.entries()) {
        if (r.contains(p)) s += v;
    }
    return s;
}

/// Dense weights for the oracle; `forbidden` cells may not be covered.
template <class T>
struct DenseWeights {
    int rows = 0;
    int cols = 0;
    std::vector<T> w;
    std::vector<std::uint8_t> forbidden;

    DenseWeights() = default;
    DenseWeights(int r, int c) : rows(r), cols(c), w(static_cast<std::size_t>(r) * c, T(0)) {}

    T& at(int r, int c) { return w[static_cast<std::size_t>(r) * cols + c]; }
    const T& at(int r, int c) const { return w[static_cast<std::size_t>(r) * cols + c]; }
    bool is_forbidden(int r, int c) const {
        return !forbidden.empty() && forbidden[static_cast<std::size_t>(r) * cols + c] != 0;
    }
    void forbid(int r, int c) {
        if (forbidden.empty()) forbidden.assign(w.size(), 0);
        forbidden[static_cast<std::size_t>(r) * cols + c] = 1;
    }
};

template <class T>
struct SubmatrixChoice {
    std::uint64_t row_mask = 0;
    std::uint64_t col_mask = 0;
    T value = T(0);
};

namespace detail {

template <class T>
DenseWeights<T> transpose(const DenseWeights<T>& d) {
    DenseWeights<T> t(d.cols, d.rows);
    for (int r = 0; r < d.rows; ++r) {
        for (int c = 0; c < d.cols; ++c) {
            t.at(c, r) = d.at(r, c);
            if (d.is_forbidden(r, c)) t.forbid(c, r);
        }
    }
    return t;
}

}  // namespace detail

namespace detail {

/// Calls visit(row_mask, col_mask, value) once per nonempty row subset, in
/// Gray-code order, with the best column set for it.
template <class T, class F>
void sweep_rows(const DenseWeights<T>& d, std::uint64_t max_subsets, F&& visit) {
    const int R = d.rows;
    const int C = d.cols;
    if (R >= 63 || (1ULL << R) > max_subsets) {
        throw Error(ErrorKind::CapExceeded, "oracle would sweep 2^" + std::to_string(R) + " subsets, cap is " +
                                                std::to_string(max_subsets));
    }
    std::vector<T> sums(static_cast<std::size_t>(C), T(0));
    std::vector<int> blocked(static_cast<std::size_t>(C), 0);
    const bool has_forbidden = !d.forbidden.empty();
    std::uint64_t rows_in = 0;
    const std::uint64_t total = 1ULL << R;
    for (std::uint64_t g = 1; g < total; ++g) {
        const int flip = std::countr_zero(g);
        const bool adding = !((rows_in >> flip) & 1U);
        rows_in ^= 1ULL << flip;
        for (int c = 0; c < C; ++c) {
            if (adding) {
                sums[static_cast<std::size_t>(c)] += d.at(flip, c);
            } else {
                sums[static_cast<std::size_t>(c)] -= d.at(flip, c);
            }
            if (has_forbidden && d.is_forbidden(flip, c)) blocked[static_cast<std::size_t>(c)] += adding ? 1 : -1;
        }
        T value(0);
        std::uint64_t cols_in = 0;
        for (int c = 0; c < C; ++c) {
            if (blocked[static_cast<std::size_t>(c)] == 0 && sums[static_cast<std::size_t>(c)] > 0) {
                value += sums[static_cast<std::size_t>(c)];
                cols_in |= 1ULL << c;
            }
        }
        visit(rows_in, cols_in, value);
    }
}

/// As sweep_rows, over subsets of the shorter side.
template <class T, class F>
void sweep_submatrices(const DenseWeights<T>& d, std::uint64_t max_subsets, F&& visit) {
    if (d.rows > d.cols) {
        sweep_rows(transpose(d), max_subsets, [&](std::uint64_t r, std::uint64_t c, const T& v) { visit(c, r, v); });
    } else {
        sweep_rows(d, max_subsets, visit);
    }
}

}  // namespace detail

/// Exact maximum of the submatrix sum over all row/column subsets (the empty
/// submatrix counts, with value 0). For a fixed subset of the shorter side the
/// best partner is exactly the set of admissible lines with positive sum.
template <class T>
SubmatrixChoice<T> max_weight_submatrix(const DenseWeights<T>& d,
                                        std::uint64_t max_subsets = kDefaultOracleRowSubsetCap) {
    SubmatrixChoice<T> best;
    detail::sweep_submatrices(d, max_subsets, [&](std::uint64_t r, std::uint64_t c, const T& v) {
        if (v > best.value) best = {r, c, v};
    });
    return best;
}

/// The `count` heaviest distinct positive submatrices seen by the sweep,
/// heaviest first. The first entry agrees with max_weight_submatrix.
template <class T>
std::vector<SubmatrixChoice<T>> top_weight_submatrices(const DenseWeights<T>& d, std::size_t count,
                                                       std::uint64_t max_subsets = kDefaultOracleRowSubsetCap) {
    std::vector<SubmatrixChoice<T>> top;
    if (count == 0) return top;
    detail::sweep_submatrices(d, max_subsets, [&](std::uint64_t r, std::uint64_t c, const T& v) {
        if (!(v > 0) || c == 0) return;
        if (top.size() == count && !(v > top.back().value)) return;
        for (const auto& t : top) {
            if (t.row_mask == r && t.col_mask == c) return;
        }
        auto pos = std::find_if(top.begin(), top.end(), [&](const SubmatrixChoice<T>& t) { return v > t.value; });
        top.insert(pos, SubmatrixChoice<T>{r, c, v});
        if (top.size() > count) top.pop_back();
    });
    return top;
}

using PairFilter = std::function<bool(const InputPair&)>;

template <class T>
struct RectangleChoice {
    Rectangle rect;
    T value = T(0);
};

template <class T>
struct RvChoice {
    Rectangle rect;
    T value = T(0);
    WitnessSet witness;
};

namespace detail {

/// Dense view of the weights restricted to the pairs `keep` accepts.
template <class T>
struct DenseView {
    std::vector<BitString> rows;
    std::vector<BitString> cols;
    DenseWeights<T> dense;

    DenseView(const WeightMatrix<T>& w, const std::function<bool(const InputPair&)>& keep,
              const PairFilter& forbidden) {
        for (const auto& [p, v] : w.entries()) {
            if (!keep(p)) continue;
            rows.push_back(p.x);
            cols.push_back(p.y);
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        dense = DenseWeights<T>(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (const auto& [p, v] : w.entries()) {
            if (!keep(p)) continue;
            const auto r = std::lower_bound(rows.begin(), rows.end(), p.x) - rows.begin();
            const auto c = std::lower_bound(cols.begin(), cols.end(), p.y) - cols.begin();
            dense.at(static_cast<int>(r), static_cast<int>(c)) = v;
        }
        if (forbidden) {
            for (int r = 0; r < dense.rows; ++r) {
                for (int c = 0; c < dense.cols; ++c) {
                    if (forbidden(InputPair(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]))) {
                        dense.forbid(r, c);
                    }
                }
            }
        }
    }

    Rectangle rectangle(int n, const SubmatrixChoice<T>& m) const {
        std::vector<BitString> rr;
        std::vector<BitString> cc;
        for (int r = 0; r < dense.rows; ++r) {
            if ((m.row_mask >> r) & 1U) rr.push_back(rows[static_cast<std::size_t>(r)]);
        }
        for (int c = 0; c < dense.cols; ++c) {
            if ((m.col_mask >> c) & 1U) cc.push_back(cols[static_cast<std::size_t>(c)]);
        }
        if (rr.empty() || cc.empty()) return Rectangle::empty(n);
        return Rectangle(n, std::move(rr), std::move(cc));
    }
};

template <class T>
RectangleChoice<T> oracle_on(const WeightMatrix<T>& w, const std::function<bool(const InputPair&)>& keep,
                             const PairFilter& forbidden, std::uint64_t cap) {
    const DenseView<T> view(w, keep, forbidden);
    if (view.rows.empty()) return {Rectangle::empty(w.n()), T(0)};
    const SubmatrixChoice<T> best = max_weight_submatrix(view.dense, cap);
    Rectangle r = view.rectangle(w.n(), best);
    if (r.empty()) return {std::move(r), T(0)};
    return {std::move(r), best.value};
}

template <class T>
std::vector<RectangleChoice<T>> oracle_top(const WeightMatrix<T>& w, const std::function<bool(const InputPair&)>& keep,
                                           const PairFilter& forbidden, std::uint64_t cap, std::size_t count) {
    const DenseView<T> view(w, keep, forbidden);
    std::vector<RectangleChoice<T>> out;
    if (view.rows.empty()) return out;
    for (const auto& m : top_weight_submatrices(view.dense, count, cap)) out.push_back({view.rectangle(w.n(), m), m.value});
    return out;
}

}  // namespace detail

/// Maximum rect_weight over all rectangles. Rows and columns without any
/// nonzero weight never improve the sum, so only the support is swept.
template <class T>
RectangleChoice<T> max_weight_rectangle(const WeightMatrix<T>& w, const PairFilter& forbidden = {},
                                        std::uint64_t cap = kDefaultOracleRowSubsetCap) {
    return detail::oracle_on(w, [](const InputPair&) { return true; }, forbidden, cap);
}

/// k-subsets of {0..n-1} in lexicographic order of their sorted coordinates.
std::vector<std::uint64_t> k_subsets_lex(int n, int k);

/// Maximum over rectangles whose pairs all contain a common size-k set I.
template <class T>
RvChoice<T> max_weight_rectangle_in_Rv(const WeightMatrix<T>& w, int k, int n, const PairFilter& forbidden = {},
                                       std::uint64_t cap = kDefaultOracleRowSubsetCap) {
    if (k < 0 || k > n) throw Error(ErrorKind::Range, "witness size must satisfy 0 <= k <= n");
    if (w.n() != n) throw Error(ErrorKind::DimensionMismatch, "weights over a different universe");
    const auto subsets = k_subsets_lex(n, k);
    RvChoice<T> best{Rectangle::empty(n), T(0), WitnessSet{subsets.front(), n}};
    bool have = false;
    for (std::uint64_t sub : subsets) {
        auto keep = [sub](const InputPair& p) { return (p.x.bits & p.y.bits & sub) == sub; };
        RectangleChoice<T> c = detail::oracle_on(w, keep, forbidden, cap);
        if (!have || c.value > best.value) {
            best = {std::move(c.rect), c.value, WitnessSet{sub, n}};
            have = true;
        }
    }
    return best;
}

/// Lexicographically smallest size-k set contained in every pair of r.
std::optional<WitnessSet> witness_set(const Rectangle& r, int k);

/// mu(R) for a fixed distribution.
Rational mu_mass(const MuDistribution& mu, const Rectangle& r);

struct WitnessPart {
    WitnessSet witness;
    Rectangle rect;
    Rational mass;
};

struct DecompositionReport {
    MuParams params;  // the distribution mu_{k+1,n,m} both sides are measured with
    std::vector<WitnessPart> parts;
    Rational lhs;
    Rational rhs;

    bool exact() const { return lhs == rhs; }
};

/// Splits R into R_I = R ∩ {x_i = y_i = 1, i ∈ I} over all |I| = k and checks
/// mu_{k+1,n,m}(R) = sum_I mu_{k+1,n,m}(R_I) / (k+1) exactly.
DecompositionReport decompose_by_witness(const Rectangle& r, int k, int m,
                                         std::uint64_t cap = kDefaultSupportCap);

struct SubmatrixMask {
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
};

/// Every (row subset, column subset) of a rows x cols index space, the empty
/// ones included.
class RectangleRange {
public:
    RectangleRange(int rows, int cols, std::uint64_t cap = kDefaultRectangleEnumerationCap);

    class iterator {
    public:
        using value_type = SubmatrixMask;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(std::uint64_t index, int col_bits) : index_(index), col_bits_(col_bits) {}

        SubmatrixMask operator*() const {
            return {index_ >> col_bits_, index_ & ((1ULL << col_bits_) - 1)};
        }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            iterator t = *this;
            ++index_;
            return t;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

    private:
        std::uint64_t index_ = 0;
        int col_bits_ = 0;
    };

    iterator begin() const { return {0, cols_}; }
    iterator end() const { return {count_, cols_}; }
    std::uint64_t size() const { return count_; }

private:
    int cols_;
    std::uint64_t count_;
};

RectangleRange enumerate_rectangles(int rows, int cols, std::uint64_t cap = kDefaultRectangleEnumerationCap);

/// Builds the rectangle selected by masks over labelled rows and columns.
Rectangle make_rectangle(int n, const std::vector<BitString>& row_labels, const std::vector<BitString>& col_labels,
                         SubmatrixMask m);

/// All 2^n strings of an n-universe in mask order.
std::vector<BitString> all_strings(int n);

}  // namespace disjlab
