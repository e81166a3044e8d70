#include "cli.hpp"

#include "disjlab/errors.hpp"
#include "disjlab/rectangles.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>

namespace disjlab::cli {

namespace {

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || parsed == 0) {
        throw Error(ErrorKind::Parameter, std::string(name) + " must be a positive integer");
    }
    return parsed;
}

void add_format(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "json or csv")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}},
                                            CLI::ignore_case));
    sub->add_option("-o,--out", cfg.out_path, "Write the report here instead of stdout");
    sub->add_flag("--timing", cfg.timing, "Add wall-clock runtime to the report");
}

void add_function(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--family", cfg.family, "NDISJ, DISJ, EQ, IP, AND, ZERO or ONE");
    sub->add_option("--table", cfg.table_path, "Truth-table file (overrides --family)");
}

}  // namespace

void apply_environment_caps(RunConfig& cfg) {
    cfg.support_cap = env_cap("DISJLAB_SUPPORT_CAP", 1ULL << 16);
    cfg.oracle_cap = env_cap("DISJLAB_ORACLE_ROW_CAP", kDefaultOracleRowSubsetCap);
    cfg.enum_cap = env_cap("DISJLAB_ENUM_CAP", 200'000);
    cfg.run_cap = env_cap("DISJLAB_RUN_CAP", 1ULL << 26);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Rectangle-bound LPs, dual certificates, sampling scans and protocol simulations", "disjlab"};
    app.require_subcommand(1);

    auto* bound = app.add_subcommand("bound", "Build and solve a rectangle LP");
    add_function(bound, cfg);
    bound->add_option("--lp", cfg.lp, "search, lovasz or smooth")
        ->check(CLI::IsMember({"search", "lovasz", "smooth"}, CLI::ignore_case));
    bound->add_option("--n", cfg.n, "Input length")->check(CLI::Range(0, 10));
    bound->add_option("--k", cfg.k, "Intersection size (search LP)");
    bound->add_option("--sigma", cfg.sigma, "Success parameter (search LP)");
    bound->add_option("--eps", cfg.epsilon, "Error parameter (lovasz and smooth LPs)");
    bound->add_option("--ambiguity", cfg.ambiguity, "Relax the <= 1 rows to 2^(rate k)");
    bound->add_option("--solver", cfg.solver, "full, cg, both or auto")
        ->check(CLI::IsMember({"full", "cg", "both", "auto"}));
    bound->add_option("--arith", cfg.arithmetic, "auto, exact or float (full enumeration)")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    bound->add_flag("--zero-rows", cfg.zero_rows, "Search LP: keep the |x cap y| < k rows");
    add_format(bound, cfg);

    auto* certify = app.add_subcommand("certify", "Construct or load a dual certificate and verify it");
    certify->add_option("--construction", cfg.construction, "standard, smooth or zero")
        ->check(CLI::IsMember({"standard", "smooth", "zero"}));
    certify->add_option("--in", cfg.certificate_in, "Certificate JSON to verify");
    certify->add_option("--n", cfg.n, "Universe size before padding")->check(CLI::Range(0, 12));
    certify->add_option("--k", cfg.k, "Intersection size");
    certify->add_option("--m", cfg.m, "Set size");
    certify->add_option("--alpha", cfg.alpha, "Exponent on the psi side");
    certify->add_option("--beta", cfg.beta, "Exponent on the phi side");
    certify->add_option("--eps", cfg.epsilon, "Error parameter (smooth)");
    certify->add_option("--verify", cfg.verify, "exhaustive, oracle, both or none")
        ->check(CLI::IsMember({"exhaustive", "oracle", "both", "none"}));
    certify->add_option("--tolerance", cfg.tolerance, "Allowed excess over 1");
    certify->add_option("--emit", cfg.certificate_out, "Also write the certificate JSON here");
    add_format(certify, cfg);

    auto* scan = app.add_subcommand("scan", "Compare mu_k and mu_0 masses over a rectangle population");
    scan->add_option("--n", cfg.n, "Universe size")->check(CLI::Range(1, 16));
    scan->add_option("--m", cfg.m, "Set size (default n/4)");
    scan->add_option("--k", cfg.k, "Target intersection size (default 1)");
    scan->add_option("--gamma", cfg.gamma, "Largeness bar 2^(-gamma n)");
    scan->add_option("--delta", cfg.delta, "Slack exponent");
    scan->add_option("--samples", cfg.samples, "Sampled rectangles");
    scan->add_option("--seed", cfg.seed, "Random seed (required)")->required();
    scan->add_option("--population", cfg.population, "auto, exhaustive, sampled or full-only");
    add_format(scan, cfg);

    auto* protocol = app.add_subcommand("protocol", "Simulate a protocol and compare with its analytic bound");
    protocol->add_option("--construction", cfg.construction, "trivial, verified, halving or kfold")
        ->check(CLI::IsMember({"trivial", "verified", "halving", "kfold"}))
        ->required();
    protocol->add_option("--task", cfg.task, "ndisj, search or search-choose (trivial)")
        ->check(CLI::IsMember({"ndisj", "search", "search-choose"}));
    protocol->add_option("--n", cfg.n, "Block length (N for search-choose)")->check(CLI::Range(1, 16));
    protocol->add_option("--k", cfg.k, "Number of blocks (K for search-choose)");
    protocol->add_option("--K", cfg.K, "Coordinates wanted by the k-fold reduction");
    protocol->add_option("--s", cfg.s, "Halving rounds");
    protocol->add_option("--alpha", cfg.protocol_alpha, "Output fraction of the k-fold reduction (default 4K/k)");
    protocol->add_option("--base-success", cfg.base_success,
                         "Mix the base protocol with always-reject so it succeeds with this probability");
    protocol->add_option("--mode", cfg.success_mode, "exact or monte-carlo")
        ->check(CLI::IsMember({"exact", "monte-carlo"}));
    protocol->add_option("--aggregate", cfg.aggregate, "worst or uniform")->check(CLI::IsMember({"worst", "uniform"}));
    protocol->add_option("--trials", cfg.trials, "Monte Carlo trials per input");
    protocol->add_option("--seed", cfg.seed, "Random seed");
    protocol->add_flag("--lp-bridge", cfg.bridge, "Check the leaf rectangles against the search LP");
    add_format(protocol, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        apply_environment_caps(cfg);
        CommandResult result;
        if (bound->parsed()) {
            cfg.subcommand = "bound";
            result = cmd_bound(cfg);
        } else if (certify->parsed()) {
            cfg.subcommand = "certify";
            result = cmd_certify(cfg);
        } else if (scan->parsed()) {
            cfg.subcommand = "scan";
            result = cmd_scan(cfg);
        } else {
            cfg.subcommand = "protocol";
            result = cmd_protocol(cfg);
        }
        if (cfg.out_path.empty()) {
            out << result.text;
        } else {
            std::ofstream file(cfg.out_path, std::ios::binary);
            if (!file) throw Error(ErrorKind::Parameter, "cannot write " + cfg.out_path);
            file << result.text;
        }
        return result.status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace disjlab::cli
