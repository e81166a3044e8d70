#pragma once

#include "disjlab/rational.hpp"
#include "disjlab/rectangles.hpp"
#include "disjlab/truth_table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace disjlab {

enum class LpKind { Search, Lovasz, Smooth };

std::string_view to_string(LpKind kind);

/// Which constraint a pair row came from.
///   Cover:     sum >= sigma (search, |x cap y| = k) or >= 1 - eps (1-inputs)
///   Overlap:   sum <= bound on |x cap y| > k (search only)
///   Zero:      sum = 0 on |x cap y| < k (search, full family only)
///   Error:     sum <= eps on 0-inputs
enum class RowClass { Cover, Overlap, Zero, Error };

std::string_view to_string(RowClass c);

struct PairRow {
    InputPair pair;
    RowClass cls = RowClass::Cover;
    std::optional<Rational> lower;
    std::optional<Rational> upper;
};

struct RectangleFamily {
    enum class Kind { Full, Witness, Explicit };

    Kind kind = Kind::Full;
    int witness_k = 0;
    std::vector<Rectangle> rectangles;  // only for Explicit

    static RectangleFamily full() { return {}; }
    static RectangleFamily witness(int k) { return {Kind::Witness, k, {}}; }
    static RectangleFamily explicit_list(std::vector<Rectangle> r) { return {Kind::Explicit, 0, std::move(r)}; }

    bool admits(const Rectangle& r) const;
    std::string str() const;
};

struct LPInstance {
    LpKind kind = LpKind::Search;
    int n = 0;
    int k = 0;
    Rational sigma = 0;
    Rational epsilon = 0;
    std::optional<Rational> ambiguity_rate;
    RectangleFamily family;
    std::vector<PairRow> rows;
    std::string function_name;
    bool degenerate = false;
    std::string note;

    std::size_t count(RowClass c) const;
};

struct SearchLpOptions {
    /// Keep the |x cap y| < k equality rows; this switches the family to all rectangles.
    bool zero_rows = false;
};

LPInstance build_search_lp(int n, int k, const Rational& sigma, const SearchLpOptions& opt = {});
LPInstance build_lovasz_lp(const TruthTable& f, const Rational& epsilon);
LPInstance build_smooth_lp(const TruthTable& f, const Rational& epsilon);

/// The upper bound of Cover and Overlap rows becomes 2^(rate*k). An integral
/// rate*k gives an exact power of two; otherwise the double value is used.
LPInstance apply_ambiguity_variant(const LPInstance& lp, const Rational& rate, int k);

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus s);

enum class NumericMode { ExactRational, FloatTolerance };

std::string_view to_string(NumericMode m);

struct WeightedRectangle {
    Rectangle rect;
    double weight = 0;
    std::optional<Rational> exact;
};

struct PairDual {
    InputPair pair;
    double lower = 0;  // multiplier of the >= side, nonnegative
    double upper = 0;  // multiplier of the <= side, nonpositive
    std::optional<Rational> exact_lower;
    std::optional<Rational> exact_upper;
};

struct LPResult {
    LpStatus status = LpStatus::Optimal;
    NumericMode mode = NumericMode::FloatTolerance;
    std::string solver;
    double optimum = 0;
    std::optional<Rational> exact_optimum;
    std::vector<WeightedRectangle> primal;
    std::vector<PairDual> duals;
    double max_residual = 0;
    /// Largest rectangle weight under the duals that certify dual_bound (constraint generation).
    std::optional<double> oracle_max;
    /// Dual objective / max(1, oracle_max): a lower bound certified by the scaled duals.
    std::optional<double> dual_bound;
    std::uint64_t iterations = 0;
    std::uint64_t columns = 0;
    bool degenerate = false;
    std::string note;

    double log2_optimum() const;
};

enum class Arithmetic { Auto, Exact, Float };

struct EnumerationOptions {
    Arithmetic arithmetic = Arithmetic::Auto;
    std::uint64_t max_columns = 200'000;
    std::uint64_t exact_column_limit = 5'000;
    std::uint64_t pivot_limit = 2'000'000;
};

LPResult solve_full_enumeration(const LPInstance& lp, const EnumerationOptions& opt = {});

struct GenerationOptions {
    double tol = 1e-9;
    std::uint64_t max_iterations = 2'000;
    std::uint64_t oracle_cap = kDefaultOracleRowSubsetCap;
    std::uint64_t pivot_limit = 5'000'000;
    /// Violated rectangles added per witness set (twice this for the full family).
    std::size_t columns_per_round = 8;
    /// Resume from the previous basis after adding columns.
    bool warm_start = true;
    /// Rebuild the tableau from scratch after this many warm rounds.
    std::uint64_t refresh_every = 25;
    /// Weight of the best dual point when choosing where to separate (0 disables).
    double smoothing = 0.5;
};

LPResult solve_constraint_generation(const LPInstance& lp, const GenerationOptions& opt = {});

struct PrimalCheck {
    bool feasible = false;
    Rational cost = 0;
    Rational max_violation = 0;
    std::string first_problem;
};

/// Exact feasibility of a hand-built or protocol-derived solution.
PrimalCheck check_primal(const LPInstance& lp, const std::vector<std::pair<Rectangle, Rational>>& solution);

}  // namespace disjlab
