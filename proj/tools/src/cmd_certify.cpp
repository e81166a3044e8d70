#include "cli.hpp"
#include "report.hpp"

#include "disjlab/certificate.hpp"
#include "disjlab/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace disjlab::cli {

namespace {

DualCertificate zero_certificate(int n, int k) {
    DualCertificate c;
    c.kind = CertificateKind::Custom;
    c.universe = n;
    c.n = n;
    c.k = k;
    c.phi = WeightMatrix<Rational>(n);
    c.psi = WeightMatrix<Rational>(n);
    c.note = "all weights zero";
    return c;
}

DualCertificate obtain(const RunConfig& cfg) {
    if (!cfg.certificate_in.empty()) {
        if (!cfg.construction.empty()) throw Error(ErrorKind::Parameter, "give either --in or --construction");
        std::ifstream in(cfg.certificate_in);
        if (!in) throw Error(ErrorKind::Parse, "cannot read " + cfg.certificate_in);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse, e.what());
        }
        return certificate_from_json(j);
    }
    const int k = cfg.k.value_or(1);
    if (cfg.construction == "standard") {
        return build_paper_dual_certificate(cfg.n, k, cfg.m.value_or(cfg.n / 4), parse_rational(cfg.alpha),
                                            parse_rational(cfg.beta));
    }
    if (cfg.construction == "smooth") {
        return build_smooth_dual_ndisj(cfg.n, parse_rational(cfg.beta), parse_rational(cfg.epsilon));
    }
    if (cfg.construction == "zero") return zero_certificate(cfg.n, k);
    throw Error(ErrorKind::Parameter, "certify needs --construction or --in");
}

ordered_json verify_json(const VerifyReport& r) {
    ordered_json j;
    j["mode"] = std::string(to_string(r.mode));
    j["feasible"] = r.feasible;
    j["max_weight"] = exact(r.max_weight);
    j["tolerance"] = exact(r.tolerance);
    j["rectangles_examined"] = exact(static_cast<std::int64_t>(r.rectangles_examined));
    j["argmax"] = rectangle_json(r.argmax);
    if (r.witness) j["witness_set"] = r.witness->str();
    return j;
}

}  // namespace

CommandResult cmd_certify(const RunConfig& cfg) {
    if (cfg.format == Format::Csv) throw Error(ErrorKind::Parameter, "certify reports are JSON only");
    const Stopwatch clock;
    const DualCertificate c = obtain(cfg);

    if (!cfg.certificate_out.empty()) {
        std::ofstream out(cfg.certificate_out, std::ios::binary);
        if (!out) throw Error(ErrorKind::Parameter, "cannot write " + cfg.certificate_out);
        out << to_json(c).dump(2) << "\n";
    }

    ordered_json report;
    report["command"] = "certify";
    ordered_json cert;
    cert["kind"] = std::string(to_string(c.kind));
    cert["universe"] = c.universe;
    cert["n"] = c.n;
    cert["k"] = c.k;
    cert["m"] = c.m;
    cert["alpha"] = exact(c.alpha);
    cert["beta"] = exact(c.beta);
    cert["sigma"] = exact(c.sigma);
    cert["family"] = c.family.str();
    cert["phi_entries"] = c.phi.entries().size();
    cert["psi_entries"] = c.psi.entries().size();
    cert["signs_ok"] = c.signs_ok();
    cert["degenerate"] = c.degenerate;
    if (!c.note.empty()) cert["note"] = c.note;
    report["certificate"] = cert;
    report["value"] = exact(c.value());
    report["log2_value"] = floating(c.value() > 0 ? std::log2(to_double(c.value())) : -HUGE_VAL);

    VerifyOptions opt;
    opt.tolerance = parse_rational(cfg.tolerance);
    opt.oracle_cap = cfg.oracle_cap;
    std::vector<VerifyMode> modes;
    if (cfg.verify == "exhaustive" || cfg.verify == "both") modes.push_back(VerifyMode::Exhaustive);
    if (cfg.verify == "oracle" || cfg.verify == "both") modes.push_back(VerifyMode::Oracle);

    bool feasible = c.signs_ok();
    ordered_json checks = ordered_json::array();
    std::optional<Rational> first_max;
    bool agree = true;
    for (VerifyMode mode : modes) {
        const VerifyReport r = verify_dual_certificate(c, mode, opt);
        feasible = feasible && r.feasible;
        if (first_max && *first_max != r.max_weight) agree = false;
        first_max = r.max_weight;
        checks.push_back(verify_json(r));
    }
    report["verification"] = checks;
    if (modes.size() > 1) report["modes_agree"] = agree;
    report["feasible"] = modes.empty() ? ordered_json(nullptr) : ordered_json(feasible && agree);

    if (cfg.timing) report["runtime_seconds"] = floating(clock.seconds());
    const bool failed = !modes.empty() && !(feasible && agree);
    return {failed ? kExitFailed : kExitOk, dump(report)};
}

}  // namespace disjlab::cli
