#pragma once

#include "disjlab/errors.hpp"
#include "disjlab/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace disjlab {

enum class RowSense { LessEqual, GreaterEqual, Equal };

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct SimplexTraits;

template <>
struct SimplexTraits<double> {
    static constexpr bool exact = false;
    static double eps() { return 1e-10; }
    static double feasibility_eps() { return 1e-8; }
    static double pivot_eps() { return 1e-9; }
    static bool is_zero(double v) { return std::fabs(v) <= 1e-12; }
};

template <>
struct SimplexTraits<Rational> {
    static constexpr bool exact = true;
    static Rational eps() { return 0; }
    static Rational feasibility_eps() { return 0; }
    static Rational pivot_eps() { return 0; }
    static bool is_zero(const Rational& v) { return v == 0; }
};

/// Two-phase primal simplex on a dense column-major tableau:
///   minimize c^T x  subject to  A x (<=,>=,=) b,  x >= 0.
/// Columns may be appended after an optimal solve; the next solve() resumes
/// phase 2 from the current basis, which is what column generation needs.
template <class T>
class Simplex {
public:
    using Traits = SimplexTraits<T>;
    using SparseColumn = std::vector<std::pair<int, T>>;

    Simplex(std::vector<RowSense> senses, std::vector<T> rhs)
        : senses_(std::move(senses)), rhs_(std::move(rhs)), m_(static_cast<int>(senses_.size())) {
        if (rhs_.size() != senses_.size()) throw Error(ErrorKind::DimensionMismatch, "rhs and senses differ in length");
    }

    void set_iteration_limit(std::uint64_t limit) { iteration_limit_ = limit; }

    /// Returns the structural variable index.
    int add_column(const T& cost, const SparseColumn& entries) {
        for (const auto& [row, v] : entries) {
            if (row < 0 || row >= m_) throw Error(ErrorKind::DimensionMismatch, "column entry outside the row range");
        }
        const int var = static_cast<int>(structural_.size());
        Column col;
        col.kind = Kind::Structural;
        col.cost = cost;
        col.var = var;
        if (!built_) {
            pending_.push_back({cost, entries});
            structural_.push_back(-1);
            return var;
        }
        col.tab.assign(static_cast<std::size_t>(m_), T(0));
        // B^{-1} a, using the artificial columns (identity at the start).
        for (const auto& [row, v] : entries) {
            if (Traits::is_zero(v)) continue;
            const T scaled = flip_[static_cast<std::size_t>(row)] ? T(-v) : v;
            col.orig.emplace_back(row, scaled);
            const Column& art = cols_[static_cast<std::size_t>(art_start_ + row)];
            for (int r = 0; r < m_; ++r) {
                if (!Traits::is_zero(art.tab[static_cast<std::size_t>(r)])) {
                    col.tab[static_cast<std::size_t>(r)] += scaled * art.tab[static_cast<std::size_t>(r)];
                }
            }
        }
        clean(col.tab);
        col.d = phase_cost(col);
        for (int r = 0; r < m_; ++r) col.d -= phase_cost(cols_[basis(r)]) * col.tab[static_cast<std::size_t>(r)];
        structural_.push_back(static_cast<int>(cols_.size()));
        cols_.push_back(std::move(col));
        return var;
    }

    SimplexStatus solve() {
        if (!built_) {
            build();
            phase_ = 1;
            reset_reduced_costs();
            SimplexStatus s = iterate();
            if (s != SimplexStatus::Optimal) return status_ = s;
            T infeasibility(0);
            for (int r = 0; r < m_; ++r) {
                if (cols_[basis(r)].kind == Kind::Artificial) infeasibility += rhs_now_[static_cast<std::size_t>(r)];
            }
            if (infeasibility > Traits::feasibility_eps() * scale_) return status_ = SimplexStatus::Infeasible;
            drive_out_artificials();
            phase_ = 2;
            reset_reduced_costs();
        } else {
            if (status_ == SimplexStatus::Infeasible) return status_;
            if constexpr (!Traits::exact) refactor();
            drive_out_artificials();
        }
        return status_ = iterate();
    }

    SimplexStatus status() const { return status_; }
    std::uint64_t pivots() const { return pivots_; }
    int rows() const { return m_; }
    int structural_count() const { return static_cast<int>(structural_.size()); }

    T objective() const {
        T z(0);
        for (int r = 0; r < m_; ++r) z += cols_[basis(r)].cost * rhs_now_[static_cast<std::size_t>(r)];
        return z;
    }

    std::vector<T> primal() const {
        std::vector<T> x(structural_.size(), T(0));
        for (int r = 0; r < m_; ++r) {
            const Column& c = cols_[basis(r)];
            if (c.kind == Kind::Structural) x[static_cast<std::size_t>(c.var)] = rhs_now_[static_cast<std::size_t>(r)];
        }
        return x;
    }

    /// Row duals y with the usual signs for a minimisation (y >= 0 on >=
    /// rows, y <= 0 on <= rows), so that c_j - y^T A_j is the reduced cost.
    std::vector<T> duals() const {
        std::vector<T> y(static_cast<std::size_t>(m_), T(0));
        for (int i = 0; i < m_; ++i) {
            const Column& art = cols_[static_cast<std::size_t>(art_start_ + i)];
            T v(0);
            for (int r = 0; r < m_; ++r) {
                const T& a = art.tab[static_cast<std::size_t>(r)];
                if (!Traits::is_zero(a)) v += cols_[basis(r)].cost * a;
            }
            y[static_cast<std::size_t>(i)] = flip_[static_cast<std::size_t>(i)] ? T(-v) : v;
        }
        return y;
    }

private:
    enum class Kind { Structural, Slack, Artificial };

    struct Column {
        Kind kind = Kind::Structural;
        T cost = T(0);
        int var = -1;
        std::vector<T> tab;
        T d = T(0);
        SparseColumn orig;  // in the sign-normalised rows
    };

    struct Pending {
        T cost;
        SparseColumn entries;
    };

    std::size_t basis(int r) const { return static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]); }

    T phase_cost(const Column& c) const {
        if (phase_ == 1) return c.kind == Kind::Artificial ? T(1) : T(0);
        return c.kind == Kind::Structural ? c.cost : T(0);
    }

    static void clean(std::vector<T>& v) {
        if constexpr (!Traits::exact) {
            for (auto& x : v) {
                if (Traits::is_zero(x)) x = T(0);
            }
        }
    }

    void build() {
        flip_.assign(static_cast<std::size_t>(m_), false);
        rhs_now_.resize(static_cast<std::size_t>(m_));
        for (int r = 0; r < m_; ++r) {
            flip_[static_cast<std::size_t>(r)] = rhs_[static_cast<std::size_t>(r)] < 0;
            rhs_now_[static_cast<std::size_t>(r)] =
                flip_[static_cast<std::size_t>(r)] ? T(-rhs_[static_cast<std::size_t>(r)]) : rhs_[static_cast<std::size_t>(r)];
        }
        scale_ = T(1);
        for (const auto& b : rhs_now_) {
            if (b > scale_) scale_ = b;
        }
        for (std::size_t v = 0; v < pending_.size(); ++v) {
            Column c;
            c.kind = Kind::Structural;
            c.cost = pending_[v].cost;
            c.var = static_cast<int>(v);
            c.tab.assign(static_cast<std::size_t>(m_), T(0));
            for (const auto& [row, a] : pending_[v].entries) {
                const T scaled = flip_[static_cast<std::size_t>(row)] ? T(-a) : a;
                c.tab[static_cast<std::size_t>(row)] += scaled;
                c.orig.emplace_back(row, scaled);
            }
            structural_[v] = static_cast<int>(cols_.size());
            cols_.push_back(std::move(c));
        }
        pending_.clear();
        for (int r = 0; r < m_; ++r) {
            const RowSense s = senses_[static_cast<std::size_t>(r)];
            if (s == RowSense::Equal) continue;
            Column c;
            c.kind = Kind::Slack;
            c.tab.assign(static_cast<std::size_t>(m_), T(0));
            T unit = s == RowSense::LessEqual ? T(1) : T(-1);
            c.tab[static_cast<std::size_t>(r)] = flip_[static_cast<std::size_t>(r)] ? T(-unit) : unit;
            c.orig.emplace_back(r, c.tab[static_cast<std::size_t>(r)]);
            cols_.push_back(std::move(c));
        }
        art_start_ = static_cast<int>(cols_.size());
        basis_.resize(static_cast<std::size_t>(m_));
        for (int r = 0; r < m_; ++r) {
            Column c;
            c.kind = Kind::Artificial;
            c.tab.assign(static_cast<std::size_t>(m_), T(0));
            c.tab[static_cast<std::size_t>(r)] = T(1);
            c.orig.emplace_back(r, T(1));
            basis_[static_cast<std::size_t>(r)] = static_cast<int>(cols_.size());
            cols_.push_back(std::move(c));
        }
        built_ = true;
    }

    void reset_reduced_costs() {
        for (auto& c : cols_) {
            T d = phase_cost(c);
            for (int r = 0; r < m_; ++r) {
                const T& a = c.tab[static_cast<std::size_t>(r)];
                if (!Traits::is_zero(a)) d -= phase_cost(cols_[basis(r)]) * a;
            }
            c.d = d;
        }
    }

    bool may_enter(const Column& c) const { return !(phase_ == 2 && c.kind == Kind::Artificial); }

    void pivot(int r, std::size_t enter) {
        ++pivots_;
        const std::size_t ru = static_cast<std::size_t>(r);
        const T piv = cols_[enter].tab[ru];
        const std::vector<T> pcol = cols_[enter].tab;
        const T pd = cols_[enter].d;
        const T theta = rhs_now_[ru] / piv;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const T& a = pcol[static_cast<std::size_t>(i)];
            if (!Traits::is_zero(a)) rhs_now_[static_cast<std::size_t>(i)] -= theta * a;
        }
        rhs_now_[ru] = theta;
        if constexpr (!Traits::exact) {
            for (auto& b : rhs_now_) {
                if (b < 0 && b > -1e-11) b = 0;
            }
        }
        for (std::size_t q = 0; q < cols_.size(); ++q) {
            if (q == enter) continue;
            Column& c = cols_[q];
            if (Traits::is_zero(c.tab[ru])) continue;
            const T factor = c.tab[ru] / piv;
            for (int i = 0; i < m_; ++i) {
                if (i == r) continue;
                const T& a = pcol[static_cast<std::size_t>(i)];
                if (!Traits::is_zero(a)) c.tab[static_cast<std::size_t>(i)] -= factor * a;
            }
            c.tab[ru] = factor;
            c.d -= factor * pd;
            if constexpr (!Traits::exact) {
                if (Traits::is_zero(c.d)) c.d = T(0);
                clean(c.tab);
            }
        }
        Column& e = cols_[enter];
        std::fill(e.tab.begin(), e.tab.end(), T(0));
        e.tab[ru] = T(1);
        e.d = T(0);
        basis_[ru] = static_cast<int>(enter);
    }

    // Lexicographic tie-break of the ratio test: compare rows of B^{-1}
    // (kept in the artificial columns) scaled by the pivot entry.
    bool lex_less(int r, int s, const Column& e) const {
        const T& ar = e.tab[static_cast<std::size_t>(r)];
        const T& as = e.tab[static_cast<std::size_t>(s)];
        for (int i = 0; i < m_; ++i) {
            const Column& art = cols_[static_cast<std::size_t>(art_start_ + i)];
            const T u = art.tab[static_cast<std::size_t>(r)] / ar;
            const T v = art.tab[static_cast<std::size_t>(s)] / as;
            if (Traits::is_zero(u - v)) continue;
            return u < v;
        }
        return basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(s)];
    }

    SimplexStatus iterate() {
        int degenerate_run = 0;
        int since_refactor = 0;
        while (true) {
            if (pivots_ >= iteration_limit_) return SimplexStatus::IterationLimit;
            if constexpr (!Traits::exact) {
                if (++since_refactor > kRefactorEvery) {
                    refactor();
                    since_refactor = 0;
                }
            }
            const bool bland = degenerate_run > 50 * (m_ + 1);
            std::size_t enter = cols_.size();
            T best = -Traits::eps();
            for (std::size_t q = 0; q < cols_.size(); ++q) {
                const Column& c = cols_[q];
                if (!may_enter(c) || !(c.d < -Traits::eps())) continue;
                if (bland) {
                    enter = q;
                    break;
                }
                if (c.d < best) {
                    best = c.d;
                    enter = q;
                }
            }
            if (enter == cols_.size()) return SimplexStatus::Optimal;

            const Column& e = cols_[enter];
            int leave = -1;
            T best_ratio(0);
            for (int r = 0; r < m_; ++r) {
                const T& a = e.tab[static_cast<std::size_t>(r)];
                if (!(a > Traits::pivot_eps())) continue;
                const T ratio = rhs_now_[static_cast<std::size_t>(r)] / a;
                if (leave < 0) {
                    leave = r;
                    best_ratio = ratio;
                    continue;
                }
                const T gap = ratio - best_ratio;
                bool better = ratio < best_ratio;
                if (Traits::is_zero(gap)) {
                    // Exact arithmetic: lexicographic rule. Floating point: the
                    // larger pivot, or Bland's smallest index once stalled.
                    if constexpr (Traits::exact) {
                        better = lex_less(r, leave, e);
                    } else if (bland) {
                        better = basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)];
                    } else {
                        better = a > e.tab[static_cast<std::size_t>(leave)];
                    }
                }
                if (better) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return SimplexStatus::Unbounded;
            degenerate_run = Traits::is_zero(best_ratio) ? degenerate_run + 1 : 0;
            pivot(leave, enter);
        }
    }

    /// Rebuilds the tableau for the current basis from the original columns,
    /// dropping accumulated rounding error. A singular basis is left alone.
    void refactor() {
        const std::size_t m = static_cast<std::size_t>(m_);
        std::vector<T> b(m * m, T(0));
        std::vector<T> inv(m * m, T(0));
        for (std::size_t r = 0; r < m; ++r) {
            for (const auto& [row, v] : cols_[basis(static_cast<int>(r))].orig) b[static_cast<std::size_t>(row) * m + r] = v;
            inv[r * m + r] = T(1);
        }
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t p = c;
            for (std::size_t i = c + 1; i < m; ++i) {
                if (std::abs(b[i * m + c]) > std::abs(b[p * m + c])) p = i;
            }
            if (std::abs(b[p * m + c]) < 1e-11) return;
            if (p != c) {
                for (std::size_t j = 0; j < m; ++j) {
                    std::swap(b[p * m + j], b[c * m + j]);
                    std::swap(inv[p * m + j], inv[c * m + j]);
                }
            }
            const T piv = b[c * m + c];
            for (std::size_t j = 0; j < m; ++j) {
                b[c * m + j] /= piv;
                inv[c * m + j] /= piv;
            }
            for (std::size_t i = 0; i < m; ++i) {
                if (i == c) continue;
                const T f = b[i * m + c];
                if (f == 0) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    b[i * m + j] -= f * b[c * m + j];
                    inv[i * m + j] -= f * inv[c * m + j];
                }
            }
        }
        for (auto& col : cols_) {
            std::fill(col.tab.begin(), col.tab.end(), T(0));
            for (const auto& [row, v] : col.orig) {
                for (std::size_t i = 0; i < m; ++i) col.tab[i] += inv[i * m + static_cast<std::size_t>(row)] * v;
            }
            clean(col.tab);
        }
        for (std::size_t r = 0; r < m; ++r) {
            Column& c = cols_[basis(static_cast<int>(r))];
            std::fill(c.tab.begin(), c.tab.end(), T(0));
            c.tab[r] = T(1);
        }
        for (std::size_t i = 0; i < m; ++i) {
            T v(0);
            for (std::size_t j = 0; j < m; ++j) {
                const T bj = flip_[j] ? T(-rhs_[j]) : rhs_[j];
                v += inv[i * m + j] * bj;
            }
            rhs_now_[i] = v < 0 && v > -1e-9 ? T(0) : v;
        }
        reset_reduced_costs();
    }

    void drive_out_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (cols_[basis(r)].kind != Kind::Artificial) continue;
            std::size_t pick = cols_.size();
            T best(0);
            for (std::size_t q = 0; q < cols_.size(); ++q) {
                if (cols_[q].kind == Kind::Artificial) continue;
                const T& a = cols_[q].tab[static_cast<std::size_t>(r)];
                const T mag = a < 0 ? T(-a) : a;
                if (mag > best && mag > Traits::pivot_eps()) {
                    best = mag;
                    pick = q;
                    if constexpr (Traits::exact) break;
                }
            }
            if (pick != cols_.size()) pivot(r, pick);
        }
    }

    std::vector<RowSense> senses_;
    std::vector<T> rhs_;
    int m_;
    bool built_ = false;
    int phase_ = 0;
    int art_start_ = 0;
    std::vector<bool> flip_;
    std::vector<T> rhs_now_;
    std::vector<Column> cols_;
    std::vector<int> basis_;
    std::vector<int> structural_;
    std::vector<Pending> pending_;
    T scale_ = T(1);
    std::uint64_t pivots_ = 0;
    static constexpr int kRefactorEvery = 64;
    std::uint64_t iteration_limit_ = 2'000'000;
    SimplexStatus status_ = SimplexStatus::IterationLimit;
};

}  // namespace disjlab
