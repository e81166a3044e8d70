#include "cli.hpp"
#include "report.hpp"

#include "disjlab/errors.hpp"
#include "disjlab/reductions.hpp"
#include "disjlab/tasks.hpp"

#include <algorithm>

namespace disjlab::cli {

namespace {

RandomizedProtocol with_success(const ProtocolTree& tree, const Rational& sigma) {
    if (sigma <= 0 || sigma > 1) throw Error(ErrorKind::Parameter, "--base-success must lie in (0, 1]");
    if (sigma == 1) return RandomizedProtocol::deterministic(tree);
    return RandomizedProtocol({{sigma, tree}, {1 - sigma, ProtocolTree::constant(tree.input_bits(), Output::rejected())}});
}

ordered_json success_json(const SuccessReport& r) {
    ordered_json j;
    j["aggregate"] = r.aggregate == Aggregate::WorstCase ? "worst-case" : "uniform";
    if (r.exact) {
        j["success"] = exact(*r.exact);
        j["success_float"] = floating(to_double(*r.exact));
    } else {
        j["success"] = monte_carlo(r.estimate, r.ci_low, r.ci_high);
    }
    j["worst_input"] = r.worst_input.str();
    if (r.max_wrong_exact) {
        j["max_wrong"] = exact(*r.max_wrong_exact);
    } else {
        j["max_wrong"] = monte_carlo(r.max_wrong, r.max_wrong, r.max_wrong);
    }
    j["max_bits"] = exact(static_cast<std::int64_t>(r.max_bits));
    ordered_json hist;
    for (const auto& [bits, count] : r.bits_histogram) hist[std::to_string(bits)] = count;
    j["bits_histogram"] = hist;
    j["inputs_checked"] = r.inputs_checked;
    j["runs"] = r.runs;
    return j;
}

// Lower end of the measured success: the exact value or the CI floor.
double measured_floor(const SuccessReport& r) {
    return r.exact ? to_double(*r.exact) : r.ci_low;
}

}  // namespace

CommandResult cmd_protocol(const RunConfig& cfg) {
    if (cfg.format == Format::Csv) throw Error(ErrorKind::Parameter, "protocol reports are JSON only");
    const Stopwatch clock;
    const bool monte_carlo_mode = cfg.success_mode == "monte-carlo";
    if ((monte_carlo_mode || cfg.construction == "kfold") && !cfg.seed) {
        throw Error(ErrorKind::Parameter, "this run is randomized and needs --seed");
    }
    const Rational sigma = parse_rational(cfg.base_success);
    const int n = cfg.n;
    const int k = cfg.k.value_or(1);

    SuccessOptions sopt;
    sopt.mode = monte_carlo_mode ? SuccessMode::MonteCarlo : SuccessMode::Exact;
    sopt.aggregate = cfg.aggregate == "uniform" ? Aggregate::Uniform : Aggregate::WorstCase;
    sopt.seed = cfg.seed.value_or(0);
    sopt.trials = cfg.trials;
    sopt.run_cap = cfg.run_cap;

    ReductionConfig rcfg;
    rcfg.s = cfg.s;
    rcfg.alpha = cfg.protocol_alpha.value_or(0);
    rcfg.seed = cfg.seed.value_or(0);

    std::optional<RandomizedProtocol> protocol;
    TaskSpec task;
    ordered_json analytic;
    bool ok = true;
    double bound = 0;

    if (cfg.construction == "trivial") {
        if (cfg.task == "ndisj") {
            task = TaskSpec::ndisj(n, k);
            protocol = with_success(trivial_ndisj(n, k), sigma);
        } else if (cfg.task == "search") {
            task = TaskSpec::search(n, k);
            protocol = with_success(trivial_search(n, k), sigma);
        } else {
            task = TaskSpec::search_choose(n, k);
            protocol = with_success(trivial_search_choose(n, k), sigma);
        }
        analytic["kind"] = "deterministic";
        analytic["success_bound"] = exact(sigma);
        bound = to_double(sigma);
    } else if (cfg.construction == "verified") {
        if (cfg.task == "search") {
            task = TaskSpec::search(n, k);
            protocol = make_verified(with_success(trivial_search(n, k), sigma), task);
        } else {
            task = TaskSpec::search_choose(n, k);
            protocol = make_verified(with_success(trivial_search_choose(n, k), sigma), task);
        }
        analytic["kind"] = "verified";
        analytic["success_bound"] = exact(sigma);
        analytic["overhead_bits"] = exact(static_cast<std::int64_t>(verification_overhead(task, CheckMode::Explicit)));
        analytic["max_wrong_bound"] = exact(Rational(0));
        bound = to_double(sigma);
    } else if (cfg.construction == "halving") {
        const TaskSpec base = TaskSpec::ndisj(n, k);
        NdisjReduction red = reduce_ndisj_to_search(with_success(trivial_ndisj(n, k), sigma), base, cfg.s, rcfg);
        task = red.task;
        protocol = red.protocol;
        Rational b = 1;
        for (int i = 0; i < red.exponent; ++i) b *= sigma;
        const HalvingAccounting& a = red.accounting;
        analytic["kind"] = "halving";
        analytic["success_bound"] = exact(b);
        analytic["exponent"] = red.exponent;
        analytic["accounting"] = {{"base_cost", a.base_cost}, {"s", a.s},         {"k", a.k},
                                  {"n", a.n},                 {"part", a.part},   {"padded", a.padded},
                                  {"probes", a.probes},       {"bookkeeping", a.bookkeeping},
                                  {"exchange", a.exchange},   {"answer", a.answer}, {"mode", kExact}};
        analytic["bits"] = exact(static_cast<std::int64_t>(a.total));
        bound = to_double(b);
    } else {
        const TaskSpec base = TaskSpec::search(n, k);
        KfoldReduction red = reduce_search_from_kfold(with_success(trivial_search(n, k), sigma), base, cfg.K, n * k, rcfg);
        task = red.task;
        protocol = red.protocol;
        analytic["kind"] = "kfold";
        analytic["alpha"] = floating(red.alpha);
        analytic["distinct_blocks"] = exact(red.distinct_blocks);
        analytic["permutations"] = red.permutations;
        analytic["all_permutations"] = red.all_permutations;
        analytic["success_bound"] = floating(to_double(sigma) * red.bound_factor);
        analytic["success_bound_alt"] = floating(to_double(sigma) * red.alt_factor);
        if (!red.note.empty()) analytic["note"] = red.note;
        // Both forms are checked.
        bound = std::max(red.bound_factor, red.alt_factor) * to_double(sigma);
    }

    const SuccessReport rep = success_probability(*protocol, task, sopt);

    ordered_json report;
    report["command"] = "protocol";
    report["construction"] = cfg.construction;
    report["task"] = task.str();
    report["declared_cost"] = exact(static_cast<std::int64_t>(protocol->cost()));
    report["coins"] = protocol->size();
    report["measured"] = success_json(rep);
    report["analytic"] = analytic;

    const double floor = measured_floor(rep);
    const bool meets = floor + 1e-12 >= bound;
    report["meets_success_bound"] = meets;
    ok = ok && meets;
    if (cfg.construction == "halving") {
        const bool bits_ok = rep.max_bits == analytic["bits"]["value"].get<int>();
        report["bits_match_accounting"] = bits_ok;
        ok = ok && bits_ok;
    }
    if (cfg.construction == "verified") {
        const bool clean = rep.max_wrong_exact ? *rep.max_wrong_exact == 0 : rep.max_wrong == 0;
        report["never_wrong"] = clean;
        ok = ok && clean;
    }
    if (cfg.bridge) {
        const BridgeReport b = protocol_to_lp(*protocol, task);
        ordered_json bj;
        bj["feasible"] = b.check.feasible;
        bj["cost"] = exact(b.check.cost);
        bj["cost_bound"] = exact(b.cost_bound);
        bj["rectangles"] = b.rectangles;
        bj["within_bound"] = b.within_bound;
        if (!b.check.first_problem.empty()) bj["problem"] = b.check.first_problem;
        report["lp_bridge"] = bj;
        ok = ok && b.check.feasible && b.within_bound;
    }

    if (cfg.timing) report["runtime_seconds"] = floating(clock.seconds());
    return {ok ? kExitOk : kExitFailed, dump(report)};
}

}  // namespace disjlab::cli
