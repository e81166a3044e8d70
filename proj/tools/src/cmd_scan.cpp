#include "cli.hpp"
#include "report.hpp"

#include "disjlab/errors.hpp"
#include "disjlab/scan.hpp"

namespace disjlab::cli {

CommandResult cmd_scan(const RunConfig& cfg) {
    if (!cfg.seed) throw Error(ErrorKind::Parameter, "scan needs --seed");
    const Stopwatch clock;

    ScanConfig sc;
    if (cfg.gamma) sc.gamma = *cfg.gamma;
    if (cfg.delta) sc.delta = *cfg.delta;
    sc.samples = cfg.samples;
    sc.seed = *cfg.seed;
    sc.population = parse_population(cfg.population);
    sc.exhaustive_limit = cfg.support_cap;

    const int k = cfg.k.value_or(1);
    const MuParams p{0, cfg.n, cfg.m.value_or(cfg.n / 4)};
    const ScanReport rep = sampling_lemma_scan(p, k, sc);

    if (cfg.format.value_or(Format::Csv) == Format::Csv) {
        std::string text = scan_csv(rep);
        // Runtime breaks byte-identity, so it is appended only on request.
        if (cfg.timing) text += "summary,runtime_seconds," + std::to_string(clock.seconds()) + "\n";
        return {kExitOk, std::move(text)};
    }

    const ScanSummary& s = rep.summary;
    ordered_json report;
    report["command"] = "scan";
    report["n"] = rep.n;
    report["m"] = rep.m;
    report["k"] = rep.k;
    report["seed"] = sc.seed;
    report["gamma"] = floating(sc.gamma);
    report["delta"] = floating(sc.delta);
    report["bar"] = floating(rep.bar);
    report["population"] = s.population;
    report["examined"] = exact(static_cast<std::int64_t>(s.examined));
    report["above_bar"] = exact(static_cast<std::int64_t>(s.above_bar));
    report["empty_population"] = s.empty_population;
    if (s.min_ratio) {
        report["min_ratio"] = exact(*s.min_ratio);
        report["min_ratio_id"] = *s.min_ratio_id;
    }
    report["quartiles"] = {floating(s.q25), floating(s.median), floating(s.q75)};
    report["max_ratio"] = floating(s.max_ratio);
    report["below_half_power"] = exact(static_cast<std::int64_t>(s.below_half_power));
    if (s.min_one_ratio) report["min_one_ratio"] = exact(*s.min_one_ratio);
    report["below_two_thirds"] = exact(static_cast<std::int64_t>(s.below_two_thirds));
    if (s.min_slack) report["min_slack"] = floating(*s.min_slack);
    if (cfg.timing) report["runtime_seconds"] = floating(clock.seconds());
    return {kExitOk, dump(report)};
}

}  // namespace disjlab::cli
