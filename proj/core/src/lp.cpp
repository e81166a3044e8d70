#include "disjlab/lp.hpp"

#include "disjlab/errors.hpp"
#include "disjlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace disjlab {

namespace {

constexpr int kMaxLpUniverse = 6;

void check_universe(int n) {
    if (n < 0 || n > kMaxLpUniverse) {
        throw Error(ErrorKind::Range, "LP universes are limited to 0 <= n <= " + std::to_string(kMaxLpUniverse));
    }
}

std::uint64_t pair_key(const InputPair& p) { return (p.x.bits << p.n()) | p.y.bits; }

/// Pair rows expanded into simplex rows. A pair with equal bounds gets one
/// equality row, which then serves as both its lower and upper row.
struct Expanded {
    std::vector<RowSense> senses;
    std::vector<Rational> rhs;
    std::vector<int> lo_row;
    std::vector<int> hi_row;
    std::unordered_map<std::uint64_t, int> pair_index;

    explicit Expanded(const LPInstance& lp) {
        lo_row.assign(lp.rows.size(), -1);
        hi_row.assign(lp.rows.size(), -1);
        for (std::size_t i = 0; i < lp.rows.size(); ++i) {
            const PairRow& r = lp.rows[i];
            pair_index.emplace(pair_key(r.pair), static_cast<int>(i));
            if (r.lower && r.upper && *r.lower == *r.upper) {
                lo_row[i] = hi_row[i] = push(RowSense::Equal, *r.lower);
                continue;
            }
            if (r.lower) lo_row[i] = push(RowSense::GreaterEqual, *r.lower);
            if (r.upper) hi_row[i] = push(RowSense::LessEqual, *r.upper);
        }
    }

    int push(RowSense s, const Rational& b) {
        senses.push_back(s);
        rhs.push_back(b);
        return static_cast<int>(senses.size()) - 1;
    }

    template <class T>
    std::vector<std::pair<int, T>> column(const Rectangle& r) const {
        std::vector<std::pair<int, T>> out;
        for (const auto& x : r.rows()) {
            for (const auto& y : r.cols()) {
                auto it = pair_index.find(pair_key(InputPair(x, y)));
                if (it == pair_index.end()) continue;
                const auto i = static_cast<std::size_t>(it->second);
                if (lo_row[i] >= 0) out.emplace_back(lo_row[i], T(1));
                if (hi_row[i] >= 0 && hi_row[i] != lo_row[i]) out.emplace_back(hi_row[i], T(1));
            }
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }
};

template <class T>
T convert(const Rational& q) {
    if constexpr (std::is_same_v<T, double>) {
        return q.get_d();
    } else {
        return q;
    }
}

double as_double(double v) { return v; }
double as_double(const Rational& v) { return v.get_d(); }

LpStatus map_status(SimplexStatus s) {
    switch (s) {
        case SimplexStatus::Optimal: return LpStatus::Optimal;
        case SimplexStatus::Infeasible: return LpStatus::Infeasible;
        case SimplexStatus::Unbounded: return LpStatus::Unbounded;
        case SimplexStatus::IterationLimit: return LpStatus::IterationLimit;
    }
    return LpStatus::Infeasible;
}

double residual(const LPInstance& lp, const std::vector<WeightedRectangle>& primal) {
    std::unordered_map<std::uint64_t, double> cover;
    double worst = 0;
    for (const auto& wr : primal) {
        worst = std::max(worst, -wr.weight);
        for (const auto& x : wr.rect.rows()) {
            for (const auto& y : wr.rect.cols()) cover[pair_key(InputPair(x, y))] += wr.weight;
        }
    }
    for (const auto& r : lp.rows) {
        const auto it = cover.find(pair_key(r.pair));
        const double s = it == cover.end() ? 0.0 : it->second;
        if (r.lower) worst = std::max(worst, r.lower->get_d() - s);
        if (r.upper) worst = std::max(worst, s - r.upper->get_d());
    }
    return worst;
}

/// Fills status, optimum, primal and duals from a solved simplex.
template <class T>
void extract(const LPInstance& lp, const Expanded& ex, const Simplex<T>& sx, const std::vector<Rectangle>& cols,
             LPResult& res) {
    res.status = map_status(sx.status());
    res.iterations = std::max<std::uint64_t>(res.iterations, 1);
    res.columns = cols.size();
    res.primal.clear();
    res.duals.clear();
    if (res.status != LpStatus::Optimal) return;

    const T obj = sx.objective();
    res.optimum = as_double(obj);
    if constexpr (!std::is_same_v<T, double>) res.exact_optimum = obj;

    const std::vector<T> x = sx.primal();
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const T& v = x[j];
        if constexpr (std::is_same_v<T, double>) {
            if (v <= 1e-12) continue;
            res.primal.push_back({cols[j], v, std::nullopt});
        } else {
            if (v <= 0) continue;
            res.primal.push_back({cols[j], v.get_d(), v});
        }
    }

    const std::vector<T> y = sx.duals();
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        PairDual d;
        d.pair = lp.rows[i].pair;
        T lo(0);
        T hi(0);
        if (ex.lo_row[i] >= 0 && ex.lo_row[i] == ex.hi_row[i]) {
            const T& v = y[static_cast<std::size_t>(ex.lo_row[i])];
            if (v > 0) lo = v; else hi = v;
        } else {
            if (ex.lo_row[i] >= 0) lo = y[static_cast<std::size_t>(ex.lo_row[i])];
            if (ex.hi_row[i] >= 0) hi = y[static_cast<std::size_t>(ex.hi_row[i])];
        }
        d.lower = as_double(lo);
        d.upper = as_double(hi);
        if constexpr (!std::is_same_v<T, double>) {
            d.exact_lower = lo;
            d.exact_upper = hi;
        }
        res.duals.push_back(std::move(d));
    }
    res.max_residual = residual(lp, res.primal);
}

template <class T>
LPResult solve_columns(const LPInstance& lp, const std::vector<Rectangle>& cols, std::uint64_t pivot_limit) {
    const Expanded ex(lp);
    std::vector<T> rhs;
    rhs.reserve(ex.rhs.size());
    for (const auto& q : ex.rhs) rhs.push_back(convert<T>(q));
    Simplex<T> sx(ex.senses, std::move(rhs));
    sx.set_iteration_limit(pivot_limit);
    for (const auto& r : cols) sx.add_column(T(1), ex.column<T>(r));
    sx.solve();
    LPResult res;
    res.mode = std::is_same_v<T, double> ? NumericMode::FloatTolerance : NumericMode::ExactRational;
    res.solver = "full-enumeration";
    extract(lp, ex, sx, cols, res);
    return res;
}

/// Rectangles of the family that touch at least one constrained pair.
std::vector<Rectangle> materialize_family(const LPInstance& lp, std::uint64_t max_columns) {
    const Expanded ex(lp);
    auto touches = [&](const Rectangle& r) {
        for (const auto& x : r.rows()) {
            for (const auto& y : r.cols()) {
                if (ex.pair_index.count(pair_key(InputPair(x, y)))) return true;
            }
        }
        return false;
    };
    std::vector<Rectangle> out;
    auto push = [&](Rectangle r) {
        if (r.empty() || !touches(r)) return;
        if (out.size() >= max_columns) {
            throw Error(ErrorKind::CapExceeded, "rectangle family exceeds " + std::to_string(max_columns) + " columns");
        }
        out.push_back(std::move(r));
    };

    switch (lp.family.kind) {
        case RectangleFamily::Kind::Explicit:
            for (const auto& r : lp.family.rectangles) {
                if (r.n() != lp.n) throw Error(ErrorKind::DimensionMismatch, "family rectangle over another universe");
                push(r);
            }
            break;
        case RectangleFamily::Kind::Full: {
            const auto strings = all_strings(lp.n);
            const int side = static_cast<int>(strings.size());
            if (side >= 32) throw Error(ErrorKind::CapExceeded, "full family too large to enumerate");
            for (SubmatrixMask m : enumerate_rectangles(side, side)) push(make_rectangle(lp.n, strings, strings, m));
            break;
        }
        case RectangleFamily::Kind::Witness: {
            std::set<std::pair<std::vector<BitString>, std::vector<BitString>>> seen;
            for (std::uint64_t sub : k_subsets_lex(lp.n, lp.family.witness_k)) {
                std::vector<BitString> lines;
                for (const auto& s : all_strings(lp.n)) {
                    if ((s.bits & sub) == sub) lines.push_back(s);
                }
                const int side = static_cast<int>(lines.size());
                if (side >= 32) throw Error(ErrorKind::CapExceeded, "witness family too large to enumerate");
                for (SubmatrixMask m : enumerate_rectangles(side, side)) {
                    Rectangle r = make_rectangle(lp.n, lines, lines, m);
                    if (r.empty()) continue;
                    if (!seen.emplace(r.rows(), r.cols()).second) continue;
                    push(std::move(r));
                }
            }
            break;
        }
    }
    return out;
}

void validate_epsilon(const Rational& eps) {
    if (eps < 0 || eps >= Rational(1, 2)) throw Error(ErrorKind::Range, "error must satisfy 0 <= eps < 1/2");
}

LPInstance build_function_lp(LpKind kind, const TruthTable& f, const Rational& epsilon) {
    check_universe(f.n());
    validate_epsilon(epsilon);
    LPInstance lp;
    lp.kind = kind;
    lp.n = f.n();
    lp.epsilon = epsilon;
    lp.family = RectangleFamily::full();
    lp.function_name = f.name();
    for (const auto& x : all_strings(f.n())) {
        for (const auto& y : all_strings(f.n())) {
            PairRow row;
            row.pair = InputPair(x, y);
            if (f(x, y)) {
                row.cls = RowClass::Cover;
                row.lower = 1 - epsilon;
                if (kind == LpKind::Smooth) row.upper = Rational(1);
            } else {
                row.cls = RowClass::Error;
                row.upper = epsilon;
            }
            lp.rows.push_back(std::move(row));
        }
    }
    return lp;
}

}  // namespace

std::string_view to_string(LpKind kind) {
    switch (kind) {
        case LpKind::Search: return "search";
        case LpKind::Lovasz: return "lovasz";
        case LpKind::Smooth: return "smooth";
    }
    return "unknown";
}

std::string_view to_string(RowClass c) {
    switch (c) {
        case RowClass::Cover: return "cover";
        case RowClass::Overlap: return "overlap";
        case RowClass::Zero: return "zero";
        case RowClass::Error: return "error";
    }
    return "unknown";
}

std::string_view to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

std::string_view to_string(NumericMode m) {
    return m == NumericMode::ExactRational ? "exact-rational" : "float-tol";
}

bool RectangleFamily::admits(const Rectangle& r) const {
    switch (kind) {
        case Kind::Full: return true;
        case Kind::Witness: return r.empty() || witness_set(r, witness_k).has_value();
        case Kind::Explicit: return r.empty() || std::find(rectangles.begin(), rectangles.end(), r) != rectangles.end();
    }
    return false;
}

std::string RectangleFamily::str() const {
    switch (kind) {
        case Kind::Full: return "full";
        case Kind::Witness: return "R_v(" + std::to_string(witness_k) + ")";
        case Kind::Explicit: return "explicit(" + std::to_string(rectangles.size()) + ")";
    }
    return "unknown";
}

std::size_t LPInstance::count(RowClass c) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [c](const PairRow& r) { return r.cls == c; }));
}

double LPResult::log2_optimum() const {
    return optimum > 0 ? std::log2(optimum) : -std::numeric_limits<double>::infinity();
}

LPInstance build_search_lp(int n, int k, const Rational& sigma, const SearchLpOptions& opt) {
    check_universe(n);
    if (k < 0 || k > n) throw Error(ErrorKind::Range, "search LP needs 0 <= k <= n");
    if (sigma < 0 || sigma > 1) throw Error(ErrorKind::Range, "search LP needs 0 <= sigma <= 1");
    LPInstance lp;
    lp.kind = LpKind::Search;
    lp.n = n;
    lp.k = k;
    lp.sigma = sigma;
    lp.family = opt.zero_rows ? RectangleFamily::full() : RectangleFamily::witness(k);
    if (k == 0) {
        lp.degenerate = true;
        lp.note = "k = 0: every rectangle has an empty witness set";
    }
    for (const auto& x : all_strings(n)) {
        for (const auto& y : all_strings(n)) {
            const InputPair p(x, y);
            const int t = p.intersection_size();
            PairRow row;
            row.pair = p;
            if (t == k) {
                row.cls = RowClass::Cover;
                row.lower = sigma;
                row.upper = Rational(1);
            } else if (t > k) {
                row.cls = RowClass::Overlap;
                row.upper = Rational(1);
            } else if (opt.zero_rows) {
                row.cls = RowClass::Zero;
                row.lower = Rational(0);
                row.upper = Rational(0);
            } else {
                continue;
            }
            lp.rows.push_back(std::move(row));
        }
    }
    return lp;
}

LPInstance build_lovasz_lp(const TruthTable& f, const Rational& epsilon) {
    return build_function_lp(LpKind::Lovasz, f, epsilon);
}

LPInstance build_smooth_lp(const TruthTable& f, const Rational& epsilon) {
    return build_function_lp(LpKind::Smooth, f, epsilon);
}

LPInstance apply_ambiguity_variant(const LPInstance& lp, const Rational& rate, int k) {
    if (lp.kind != LpKind::Search) throw Error(ErrorKind::KindMismatch, "the ambiguity variant applies to search LPs");
    if (rate < 0) throw Error(ErrorKind::Range, "ambiguity rate must be nonnegative");
    if (k < 0) throw Error(ErrorKind::Range, "ambiguity exponent needs k >= 0");
    const Rational e = rate * k;
    Rational bound;
    if (e.get_den() == 1) {
        bound = pow2(e.get_num().get_si());
    } else {
        bound = Rational(std::exp2(e.get_d()));
    }
    LPInstance out = lp;
    out.ambiguity_rate = rate;
    for (auto& r : out.rows) {
        if (r.cls == RowClass::Cover || r.cls == RowClass::Overlap) r.upper = bound;
    }
    return out;
}

LPResult solve_full_enumeration(const LPInstance& lp, const EnumerationOptions& opt) {
    const std::vector<Rectangle> cols = materialize_family(lp, opt.max_columns);
    const bool exact = opt.arithmetic == Arithmetic::Exact ||
                       (opt.arithmetic == Arithmetic::Auto && cols.size() <= opt.exact_column_limit);
    LPResult res = exact ? solve_columns<Rational>(lp, cols, opt.pivot_limit)
                         : solve_columns<double>(lp, cols, opt.pivot_limit);
    res.degenerate = lp.degenerate;
    res.note = lp.note;
    return res;
}

namespace {

struct Separation {
    double max = 0;
    std::vector<Rectangle> violated;
};

// Pairs that no positive column may cover: rows capped at 0 with no lower bound.
PairFilter pinned_to_zero(const LPInstance& lp) {
    auto keys = std::make_shared<std::unordered_set<std::uint64_t>>();
    for (const auto& row : lp.rows) {
        if (row.upper && *row.upper == 0 && !(row.lower && *row.lower > 0)) keys->insert(pair_key(row.pair));
    }
    if (keys->empty()) return {};
    return [keys](const InputPair& p) { return keys->count(pair_key(p)) != 0; };
}

// Row multipliers in row order, clamped to their sign constraints.
struct DualPoint {
    std::vector<double> lower;
    std::vector<double> upper;
};

DualPoint dual_point(const LPResult& res) {
    DualPoint p;
    for (const auto& d : res.duals) {
        p.lower.push_back(std::max(0.0, d.lower));
        p.upper.push_back(std::min(0.0, d.upper));
    }
    return p;
}

DualPoint blend(const DualPoint& a, const DualPoint& b, double alpha) {
    DualPoint p = b;
    for (std::size_t i = 0; i < p.lower.size(); ++i) {
        p.lower[i] = alpha * a.lower[i] + (1 - alpha) * b.lower[i];
        p.upper[i] = alpha * a.upper[i] + (1 - alpha) * b.upper[i];
    }
    return p;
}

double dual_objective(const LPInstance& lp, const DualPoint& p) {
    double v = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (lp.rows[i].lower) v += lp.rows[i].lower->get_d() * p.lower[i];
        if (lp.rows[i].upper) v += lp.rows[i].upper->get_d() * p.upper[i];
    }
    return v;
}

Separation separate(const LPInstance& lp, const DualPoint& y, const GenerationOptions& opt,
                    const PairFilter& forbidden) {
    WeightMatrix<double> w(lp.n);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const double v = y.lower[i] + y.upper[i];
        if (std::fabs(v) > 1e-13) w.set(lp.rows[i].pair, v);
    }
    Separation sep;
    auto take = [&](std::vector<RectangleChoice<double>> found) {
        if (!found.empty()) sep.max = std::max(sep.max, found.front().value);
        for (auto& c : found) {
            if (c.value > 1 + opt.tol) sep.violated.push_back(std::move(c.rect));
        }
    };
    auto all = [](const InputPair&) { return true; };
    if (lp.family.kind == RectangleFamily::Kind::Full) {
        take(detail::oracle_top<double>(w, all, forbidden, opt.oracle_cap, 2 * opt.columns_per_round));
        return sep;
    }
    for (std::uint64_t sub : k_subsets_lex(lp.n, lp.family.witness_k)) {
        auto keep = [sub](const InputPair& p) { return (p.x.bits & p.y.bits & sub) == sub; };
        take(detail::oracle_top<double>(w, keep, forbidden, opt.oracle_cap, opt.columns_per_round));
    }
    return sep;
}

}  // namespace

LPResult solve_constraint_generation(const LPInstance& lp, const GenerationOptions& opt) {
    if (lp.family.kind == RectangleFamily::Kind::Explicit) {
        throw Error(ErrorKind::Parameter, "constraint generation needs an oracle family (full or R_v)");
    }
    const Expanded ex(lp);
    std::vector<double> rhs;
    for (const auto& q : ex.rhs) rhs.push_back(q.get_d());
    const PairFilter forbidden = pinned_to_zero(lp);

    std::vector<Rectangle> cols;
    std::set<std::pair<std::vector<BitString>, std::vector<BitString>>> seen;
    auto add = [&](const Rectangle& r) {
        if (r.empty() || !seen.emplace(r.rows(), r.cols()).second) return false;
        cols.push_back(r);
        return true;
    };
    for (const auto& row : lp.rows) {
        if (row.lower && *row.lower > 0) add(Rectangle(lp.n, {row.pair.x}, {row.pair.y}));
    }
    if (lp.family.kind == RectangleFamily::Kind::Witness) {
        for (std::uint64_t sub : k_subsets_lex(lp.n, lp.family.witness_k)) add(Rectangle::containing(lp.n, sub));
    }

    auto fresh = [&]() {
        auto sx = std::make_unique<Simplex<double>>(ex.senses, rhs);
        sx->set_iteration_limit(opt.pivot_limit);
        for (const auto& r : cols) sx->add_column(1.0, ex.column<double>(r));
        return sx;
    };

    LPResult res;
    res.mode = NumericMode::FloatTolerance;
    res.solver = "constraint-generation";
    res.degenerate = lp.degenerate;
    res.note = lp.note;

    auto sx = fresh();
    bool cold = true;
    std::uint64_t warm_rounds = 0;
    double previous = std::numeric_limits<double>::infinity();
    DualPoint center;
    double best_bound = -std::numeric_limits<double>::infinity();
    double best_max = 0;
    for (std::uint64_t iter = 1;; ++iter) {
        if (iter > opt.max_iterations) {
            throw Error(ErrorKind::NonConvergence,
                        "constraint generation did not converge in " + std::to_string(opt.max_iterations) + " rounds");
        }
        sx->solve();
        res.iterations = iter;
        extract(lp, ex, *sx, cols, res);
        if (res.status != LpStatus::Optimal) {
            if (cold) return res;
            sx = fresh();
            cold = true;
            continue;
        }
        // Adding columns never raises the optimum; if it did, the warm tableau drifted.
        if (!cold && (res.optimum > previous + 1e-9 * std::max(1.0, previous) || warm_rounds >= opt.refresh_every)) {
            sx = fresh();
            cold = true;
            warm_rounds = 0;
            continue;
        }
        previous = res.optimum;

        // Separate at a point pulled towards the best dual found so far; fall
        // back to the current duals when the pulled point prices nothing out.
        const DualPoint current = dual_point(res);
        const bool smooth = !center.lower.empty() && opt.smoothing > 0;
        const DualPoint probe = smooth ? blend(center, current, opt.smoothing) : current;
        Separation sep = separate(lp, probe, opt, forbidden);
        auto record = [&](const DualPoint& y, const Separation& s) {
            const double bound = dual_objective(lp, y) / std::max(1.0, s.max);
            if (center.lower.empty() || bound > best_bound) {
                best_bound = bound;
                best_max = s.max;
                center = y;
            }
        };
        record(probe, sep);
        bool closed = false;
        bool added = false;
        auto add_violated = [&]() {
            closed = res.optimum - best_bound <= opt.tol * std::max(1.0, std::fabs(res.optimum));
            if (closed) return;
            for (const auto& r : sep.violated) {
                if (add(r)) {
                    sx->add_column(1.0, ex.column<double>(r));
                    added = true;
                }
            }
        };
        add_violated();
        if (smooth && !added && !closed) {
            sep = separate(lp, current, opt, forbidden);
            record(current, sep);
            add_violated();
        }
        if (!added) {
            if (cold) {
                res.oracle_max = best_max;
                res.dual_bound = best_bound;
                if (!closed && !sep.violated.empty()) res.note += (res.note.empty() ? "" : "; ") + std::string("stalled on a repeated column");
                return res;
            }
            // Converged on a warm basis: confirm from scratch before reporting.
            sx = fresh();
            cold = true;
            warm_rounds = 0;
            continue;
        }
        if (opt.warm_start) {
            cold = false;
            ++warm_rounds;
        } else {
            sx = fresh();
        }
    }
}

PrimalCheck check_primal(const LPInstance& lp, const std::vector<std::pair<Rectangle, Rational>>& solution) {
    PrimalCheck out;
    out.feasible = true;
    auto fail = [&](const std::string& why, const Rational& amount) {
        if (out.feasible) out.first_problem = why;
        out.feasible = false;
        if (amount > out.max_violation) out.max_violation = amount;
    };
    std::unordered_map<std::uint64_t, Rational> cover;
    for (const auto& [r, w] : solution) {
        if (r.n() != lp.n && !r.empty()) throw Error(ErrorKind::DimensionMismatch, "rectangle over another universe");
        out.cost += w;
        if (w < 0) fail("negative weight on " + r.str(), -w);
        if (!lp.family.admits(r)) fail("rectangle " + r.str() + " is outside the family " + lp.family.str(), 0);
        for (const auto& x : r.rows()) {
            for (const auto& y : r.cols()) cover[pair_key(InputPair(x, y))] += w;
        }
    }
    for (const auto& row : lp.rows) {
        const auto it = cover.find(pair_key(row.pair));
        const Rational s = it == cover.end() ? Rational(0) : it->second;
        if (row.lower && s < *row.lower) fail("pair " + row.pair.str() + " covered " + to_string(s), *row.lower - s);
        if (row.upper && s > *row.upper) fail("pair " + row.pair.str() + " covered " + to_string(s), s - *row.upper);
    }
    return out;
}

}  // namespace disjlab
