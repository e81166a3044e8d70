#include "cli.hpp"
#include "report.hpp"

#include "disjlab/errors.hpp"
#include "disjlab/lp.hpp"
#include "disjlab/truth_table.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace disjlab::cli {

namespace {

TruthTable load_function(const RunConfig& cfg) {
    if (!cfg.table_path.empty()) {
        std::ifstream in(cfg.table_path);
        if (!in) throw Error(ErrorKind::Parse, "cannot read " + cfg.table_path);
        return TruthTable::parse(in, cfg.table_path);
    }
    std::string family = cfg.family;
    std::transform(family.begin(), family.end(), family.begin(), [](unsigned char c) { return std::toupper(c); });
    return make_family(family, cfg.n);
}

LpKind parse_kind(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
    if (text == "search") return LpKind::Search;
    if (text == "lovasz") return LpKind::Lovasz;
    return LpKind::Smooth;
}

// Full enumeration is cheap up to n = 3; beyond that columns explode.
bool use_full(const std::string& solver, int n) {
    return solver == "full" || solver == "both" || (solver == "auto" && n <= 3);
}

bool use_generation(const std::string& solver, int n) {
    return solver == "cg" || solver == "both" || (solver == "auto" && n > 3);
}

ordered_json result_json(const LPResult& r) {
    ordered_json j;
    j["solver"] = r.solver;
    j["status"] = std::string(to_string(r.status));
    if (r.exact_optimum) {
        j["optimum"] = exact(*r.exact_optimum);
    } else {
        j["optimum"] = floating(r.optimum);
    }
    j["optimum_float"] = floating(r.optimum);
    j["log2_optimum"] = floating(r.log2_optimum());
    j["max_residual"] = floating(r.max_residual);
    if (r.oracle_max) j["oracle_max"] = floating(*r.oracle_max);
    if (r.dual_bound) j["dual_bound"] = floating(*r.dual_bound);
    j["iterations"] = exact(static_cast<std::int64_t>(r.iterations));
    j["columns"] = exact(static_cast<std::int64_t>(r.columns));
    j["support"] = exact(static_cast<std::int64_t>(r.primal.size()));
    j["degenerate"] = r.degenerate;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

struct Solved {
    ordered_json runs = ordered_json::array();
    bool feasible = true;
    double best = 0;
};

Solved solve_all(const LPInstance& lp, const RunConfig& cfg) {
    Solved s;
    if (use_full(cfg.solver, lp.n)) {
        EnumerationOptions opt;
        opt.max_columns = cfg.enum_cap;
        if (cfg.arithmetic == "exact") opt.arithmetic = Arithmetic::Exact;
        if (cfg.arithmetic == "float") opt.arithmetic = Arithmetic::Float;
        const LPResult r = solve_full_enumeration(lp, opt);
        s.runs.push_back(result_json(r));
        s.feasible = s.feasible && r.status == LpStatus::Optimal;
        s.best = r.optimum;
    }
    if (use_generation(cfg.solver, lp.n)) {
        GenerationOptions opt;
        opt.oracle_cap = cfg.oracle_cap;
        const LPResult r = solve_constraint_generation(lp, opt);
        s.runs.push_back(result_json(r));
        s.feasible = s.feasible && r.status == LpStatus::Optimal;
        s.best = r.optimum;
    }
    return s;
}

ordered_json instance_json(const LPInstance& lp) {
    ordered_json j;
    j["kind"] = std::string(to_string(lp.kind));
    j["function"] = lp.function_name;
    j["n"] = lp.n;
    if (lp.kind == LpKind::Search) {
        j["k"] = lp.k;
        j["sigma"] = exact(lp.sigma);
    } else {
        j["epsilon"] = exact(lp.epsilon);
    }
    if (lp.ambiguity_rate) j["ambiguity_rate"] = exact(*lp.ambiguity_rate);
    j["family"] = lp.family.str();
    ordered_json rows;
    for (RowClass c : {RowClass::Cover, RowClass::Overlap, RowClass::Zero, RowClass::Error}) {
        rows[std::string(to_string(c))] = lp.count(c);
    }
    j["rows"] = rows;
    j["degenerate"] = lp.degenerate;
    if (!lp.note.empty()) j["note"] = lp.note;
    return j;
}

}  // namespace

CommandResult cmd_bound(const RunConfig& cfg) {
    if (cfg.format == Format::Csv) throw Error(ErrorKind::Parameter, "bound reports are JSON only");
    const Stopwatch clock;
    const LpKind kind = parse_kind(cfg.lp);
    const Rational eps = parse_rational(cfg.epsilon);

    LPInstance lp;
    std::optional<LPInstance> lovasz;
    if (kind == LpKind::Search) {
        if (!cfg.table_path.empty()) throw Error(ErrorKind::Parameter, "the search LP takes no truth table");
        lp = build_search_lp(cfg.n, cfg.k.value_or(1), parse_rational(cfg.sigma), SearchLpOptions{cfg.zero_rows});
    } else {
        const TruthTable f = load_function(cfg);
        if (kind == LpKind::Lovasz) {
            lp = build_lovasz_lp(f, eps);
        } else {
            lp = build_smooth_lp(f, eps);
            lovasz = build_lovasz_lp(f, eps);
        }
    }

    ordered_json report;
    report["command"] = "bound";
    report["instance"] = instance_json(lp);
    Solved main = solve_all(lp, cfg);
    report["results"] = main.runs;
    bool ok = main.feasible;

    if (lovasz) {
        Solved other = solve_all(*lovasz, cfg);
        ordered_json cmp;
        cmp["lovasz"] = other.runs;
        cmp["smooth_at_least_lovasz"] = main.best >= other.best - 1e-9;
        cmp["mode"] = kFloat;
        report["comparison"] = cmp;
        ok = ok && other.feasible;
    }

    if (cfg.ambiguity) {
        const Rational rate = parse_rational(*cfg.ambiguity);
        const LPInstance relaxed = apply_ambiguity_variant(lp, rate, cfg.k.value_or(lp.k > 0 ? lp.k : 1));
        Solved r = solve_all(relaxed, cfg);
        ordered_json amb;
        amb["rate"] = exact(rate);
        amb["results"] = r.runs;
        amb["not_above_original"] = r.best <= main.best + 1e-9;
        report["ambiguity"] = amb;
        ok = ok && r.feasible;
    }

    if (cfg.timing) report["runtime_seconds"] = floating(clock.seconds());
    return {ok ? kExitOk : kExitFailed, dump(report)};
}

}  // namespace disjlab::cli
