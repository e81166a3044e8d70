#include "disjlab/certificate.hpp"

#include "disjlab/combinatorics.hpp"
#include "disjlab/errors.hpp"

#include <bit>

namespace disjlab {

namespace {

long integral_exponent(const Rational& rate, int count, const char* what) {
    const Rational e = rate * count;
    if (e.get_den() != 1) {
        throw Error(ErrorKind::Parameter, std::string(what) + " must be an integer for exact weights, got " + to_string(e));
    }
    if (!e.get_num().fits_slong_p()) throw Error(ErrorKind::Range, std::string(what) + " is out of range");
    return e.get_num().get_si();
}

void add_scaled_mu(WeightMatrix<Rational>& w, const MuParams& p, const Rational& factor) {
    const MuDistribution mu(p);
    const Rational v = factor * mu.point_mass();
    for (const auto& pair : enumerate_support(p)) w.add(pair, v);
}

std::optional<Rational> optional_rational(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return parse_rational(j.at(key).get<std::string>());
}

nlohmann::json weights_json(const WeightMatrix<Rational>& w) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [p, v] : w.entries()) out.push_back({p.x.str(), p.y.str(), to_string(v)});
    return out;
}

WeightMatrix<Rational> weights_from_json(const nlohmann::json& j, int universe) {
    WeightMatrix<Rational> w(universe);
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::Parse, "weight entries are [x, y, \"p/q\"]");
        const BitString x = BitString::parse(e[0].get<std::string>());
        const BitString y = BitString::parse(e[1].get<std::string>());
        w.add(InputPair(x, y), parse_rational(e[2].get<std::string>()));
    }
    return w;
}

/// Every subset of the admissible rows times every subset of the admissible
/// columns, with no shortcut, for cross-checking the oracle.
struct Exhaustive {
    Rational best = 0;
    Rectangle argmax;
    std::uint64_t examined = 0;
};

void enumerate_all(const WeightMatrix<Rational>& w, const std::function<bool(const InputPair&)>& keep,
                   const PairFilter& forbidden, std::uint64_t cap, Exhaustive& out) {
    const detail::DenseView<Rational> view(w, keep, forbidden);
    const int R = view.dense.rows;
    const int C = view.dense.cols;
    if (R == 0) return;
    if (R + C >= 63 || (1ULL << (R + C)) > cap) {
        throw Error(ErrorKind::CapExceeded, "exhaustive verification needs 2^" + std::to_string(R + C) +
                                                " rectangles, cap is " + std::to_string(cap));
    }
    const bool has_forbidden = !view.dense.forbidden.empty();
    std::vector<Rational> colsum(static_cast<std::size_t>(C), Rational(0));
    std::vector<int> colblock(static_cast<std::size_t>(C), 0);
    std::uint64_t rows_in = 0;
    for (std::uint64_t g = 0; g < (1ULL << R); ++g) {
        if (g > 0) {
            const int flip = std::countr_zero(g);
            const bool adding = !((rows_in >> flip) & 1U);
            rows_in ^= 1ULL << flip;
            for (int c = 0; c < C; ++c) {
                const Rational& a = view.dense.at(flip, c);
                if (adding) {
                    colsum[static_cast<std::size_t>(c)] += a;
                } else {
                    colsum[static_cast<std::size_t>(c)] -= a;
                }
                if (has_forbidden && view.dense.is_forbidden(flip, c)) colblock[static_cast<std::size_t>(c)] += adding ? 1 : -1;
            }
        }
        Rational value = 0;
        int blocked = 0;
        std::uint64_t cols_in = 0;
        for (std::uint64_t h = 0; h < (1ULL << C); ++h) {
            if (h > 0) {
                const int flip = std::countr_zero(h);
                const bool adding = !((cols_in >> flip) & 1U);
                cols_in ^= 1ULL << flip;
                if (adding) {
                    value += colsum[static_cast<std::size_t>(flip)];
                } else {
                    value -= colsum[static_cast<std::size_t>(flip)];
                }
                blocked += (adding ? 1 : -1) * (colblock[static_cast<std::size_t>(flip)] > 0 ? 1 : 0);
            }
            ++out.examined;
            if (rows_in == 0 || cols_in == 0 || blocked > 0) continue;
            if (value > out.best) {
                out.best = value;
                out.argmax = view.rectangle(w.n(), SubmatrixChoice<Rational>{rows_in, cols_in, value});
            }
        }
    }
}

}  // namespace

std::string CertificateFamily::str() const {
    std::string s = witness_k ? "R_v(" + std::to_string(*witness_k) + ")" : "full";
    if (exclude_disjoint) s += " minus rectangles touching T_0";
    return s;
}

std::string_view to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::Search: return "search";
        case CertificateKind::SmoothNdisj: return "smooth-ndisj";
        case CertificateKind::FromLp: return "from-lp";
        case CertificateKind::Custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(VerifyMode m) { return m == VerifyMode::Exhaustive ? "exhaustive" : "oracle"; }

Rational DualCertificate::value() const { return phi_coefficient * phi.total_positive() + psi_coefficient * psi.total_negative(); }

WeightMatrix<Rational> DualCertificate::combined() const {
    WeightMatrix<Rational> w = phi;
    for (const auto& [p, v] : psi.entries()) w.add(p, v);
    return w;
}

bool DualCertificate::signs_ok() const {
    return phi.total_negative() == 0 && psi.total_positive() == 0;
}

DualCertificate build_paper_dual_certificate(int n, int k, int m, const Rational& alpha, const Rational& beta) {
    const MuParams pos{k, n + k, m + k};
    const MuParams neg{2 * k, n + k, m + k};
    if (n < 0 || k < 0 || m < 0 || !pos.valid() || !neg.valid()) {
        throw Error(ErrorKind::SupportEmpty, "needs valid " + to_string(pos) + " and " + to_string(neg));
    }
    const Rational big = pow2(integral_exponent(beta, n, "beta*n"));
    const Rational small = pow2(-integral_exponent(alpha, k, "alpha*k"));
    DualCertificate c;
    c.kind = CertificateKind::Search;
    c.universe = n + k;
    c.n = n;
    c.k = k;
    c.m = m;
    c.alpha = alpha;
    c.beta = beta;
    c.sigma = 2 * small;
    c.phi_coefficient = c.sigma;
    c.family.witness_k = k;
    c.phi = WeightMatrix<Rational>(c.universe);
    c.psi = WeightMatrix<Rational>(c.universe);
    add_scaled_mu(c.phi, pos, big);
    add_scaled_mu(c.psi, neg, -big * small);
    if (k == 0) {
        c.degenerate = true;
        c.note = "k = 0: phi and psi share the support T_0";
    }
    return c;
}

DualCertificate build_smooth_dual_ndisj(int n, const Rational& beta, const Rational& epsilon) {
    if (n % 4 != 0) throw Error(ErrorKind::Divisibility, "n must be divisible by 4, got " + std::to_string(n));
    if (epsilon < 0 || epsilon >= Rational(1, 2)) throw Error(ErrorKind::Range, "error must satisfy 0 <= eps < 1/2");
    const int m = n / 4;
    const MuParams one{1, n, m};
    const MuParams two{2, n, m};
    if (!one.valid()) throw Error(ErrorKind::SupportEmpty, "needs valid " + to_string(one));
    const Rational big = pow2(integral_exponent(beta, n, "beta*n"));
    DualCertificate c;
    c.kind = CertificateKind::SmoothNdisj;
    c.universe = n;
    c.n = n;
    c.k = 1;
    c.m = m;
    c.beta = beta;
    c.epsilon = epsilon;
    c.phi_coefficient = 1 - epsilon;
    c.family.witness_k = 1;
    c.family.exclude_disjoint = true;
    c.phi = WeightMatrix<Rational>(n);
    c.psi = WeightMatrix<Rational>(n);
    add_scaled_mu(c.phi, one, big);
    if (two.valid()) {
        add_scaled_mu(c.psi, two, Rational(-3, 4) * big);
    } else {
        c.degenerate = true;
        c.note = to_string(two) + " has empty support, so psi is empty";
    }
    return c;
}

DualCertificate certificate_from_lp(const LPInstance& lp, const LPResult& res) {
    if (res.status != LpStatus::Optimal) throw Error(ErrorKind::Parameter, "LP result is not optimal");
    DualCertificate c;
    c.kind = CertificateKind::FromLp;
    c.universe = lp.n;
    c.n = lp.n;
    c.k = lp.k;
    c.sigma = lp.sigma;
    c.epsilon = lp.epsilon;
    c.phi = WeightMatrix<Rational>(lp.n);
    c.psi = WeightMatrix<Rational>(lp.n);
    switch (lp.kind) {
        case LpKind::Search:
            c.phi_coefficient = lp.sigma;
            c.family.witness_k = lp.family.kind == RectangleFamily::Kind::Witness ? std::optional<int>(lp.k) : std::nullopt;
            for (const auto& r : lp.rows) {
                if (r.cls == RowClass::Zero) {
                    throw Error(ErrorKind::KindMismatch, "LPs with equality rows have no uniform dual objective");
                }
                if (r.upper) c.psi_coefficient = *r.upper;
            }
            break;
        case LpKind::Lovasz:
            c.phi_coefficient = 1 - lp.epsilon;
            c.psi_coefficient = lp.epsilon;
            break;
        case LpKind::Smooth:
            throw Error(ErrorKind::KindMismatch, "smooth LP rows have mixed upper bounds");
    }
    for (const auto& d : res.duals) {
        const Rational lo = d.exact_lower ? *d.exact_lower : Rational(d.lower);
        const Rational hi = d.exact_upper ? *d.exact_upper : Rational(d.upper);
        if (lo > 0) c.phi.set(d.pair, lo);
        if (hi < 0) c.psi.set(d.pair, hi);
    }
    return c;
}

DualCertificate scale(const DualCertificate& c, const Rational& s) {
    if (s <= 0) throw Error(ErrorKind::Range, "scale factor must be positive");
    DualCertificate out = c;
    out.phi = WeightMatrix<Rational>(c.universe);
    out.psi = WeightMatrix<Rational>(c.universe);
    for (const auto& [p, v] : c.phi.entries()) out.phi.set(p, v * s);
    for (const auto& [p, v] : c.psi.entries()) out.psi.set(p, v * s);
    return out;
}

VerifyReport verify_dual_certificate(const DualCertificate& c, VerifyMode mode, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.mode = mode;
    rep.tolerance = opt.tolerance;
    rep.argmax = Rectangle::empty(c.universe);
    const WeightMatrix<Rational> w = c.combined();
    PairFilter forbidden;
    if (c.family.exclude_disjoint) forbidden = [](const InputPair& p) { return (p.x.bits & p.y.bits) == 0; };

    std::vector<std::uint64_t> subsets{0};
    if (c.family.witness_k) subsets = k_subsets_lex(c.universe, *c.family.witness_k);

    if (mode == VerifyMode::Oracle) {
        if (c.family.witness_k) {
            RvChoice<Rational> best = max_weight_rectangle_in_Rv(w, *c.family.witness_k, c.universe, forbidden, opt.oracle_cap);
            rep.max_weight = best.value;
            rep.argmax = best.rect;
            if (!best.rect.empty()) rep.witness = best.witness;
        } else {
            RectangleChoice<Rational> best = max_weight_rectangle(w, forbidden, opt.oracle_cap);
            rep.max_weight = best.value;
            rep.argmax = best.rect;
        }
        rep.rectangles_examined = subsets.size();
    } else {
        Exhaustive ex;
        ex.argmax = Rectangle::empty(c.universe);
        for (std::uint64_t sub : subsets) {
            const Rational before = ex.best;
            auto keep = [sub](const InputPair& p) { return (p.x.bits & p.y.bits & sub) == sub; };
            enumerate_all(w, keep, forbidden, opt.enumeration_cap, ex);
            if (ex.best > before && c.family.witness_k) rep.witness = WitnessSet{sub, c.universe};
        }
        rep.max_weight = ex.best;
        rep.argmax = ex.argmax;
        rep.rectangles_examined = ex.examined;
    }
    rep.feasible = rep.max_weight <= 1 + opt.tolerance;
    return rep;
}

nlohmann::json to_json(const DualCertificate& c) {
    nlohmann::json j;
    j["format"] = "disjlab-dual-certificate";
    j["version"] = 1;
    j["kind"] = std::string(to_string(c.kind));
    j["universe"] = c.universe;
    j["n"] = c.n;
    j["k"] = c.k;
    j["m"] = c.m;
    j["alpha"] = to_string(c.alpha);
    j["beta"] = to_string(c.beta);
    j["sigma"] = to_string(c.sigma);
    j["epsilon"] = to_string(c.epsilon);
    j["phi_coefficient"] = to_string(c.phi_coefficient);
    j["psi_coefficient"] = to_string(c.psi_coefficient);
    j["family"] = {{"witness_k", c.family.witness_k ? nlohmann::json(*c.family.witness_k) : nlohmann::json(nullptr)},
                   {"exclude_disjoint", c.family.exclude_disjoint}};
    j["degenerate"] = c.degenerate;
    j["note"] = c.note;
    j["phi"] = weights_json(c.phi);
    j["psi"] = weights_json(c.psi);
    return j;
}

DualCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", "") != "disjlab-dual-certificate") throw Error(ErrorKind::Parse, "not a dual certificate");
        DualCertificate c;
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "search") {
            c.kind = CertificateKind::Search;
        } else if (kind == "smooth-ndisj") {
            c.kind = CertificateKind::SmoothNdisj;
        } else if (kind == "from-lp") {
            c.kind = CertificateKind::FromLp;
        } else {
            c.kind = CertificateKind::Custom;
        }
        c.universe = j.at("universe").get<int>();
        if (c.universe < 0 || c.universe > kMaxUniverse) throw Error(ErrorKind::Range, "universe out of range");
        c.n = j.value("n", c.universe);
        c.k = j.value("k", 0);
        c.m = j.value("m", 0);
        c.alpha = optional_rational(j, "alpha").value_or(0);
        c.beta = optional_rational(j, "beta").value_or(0);
        c.sigma = optional_rational(j, "sigma").value_or(0);
        c.epsilon = optional_rational(j, "epsilon").value_or(0);
        c.phi_coefficient = optional_rational(j, "phi_coefficient").value_or(1);
        c.psi_coefficient = optional_rational(j, "psi_coefficient").value_or(1);
        if (j.contains("family")) {
            const auto& f = j.at("family");
            if (f.contains("witness_k") && !f.at("witness_k").is_null()) c.family.witness_k = f.at("witness_k").get<int>();
            c.family.exclude_disjoint = f.value("exclude_disjoint", false);
        }
        c.degenerate = j.value("degenerate", false);
        c.note = j.value("note", "");
        c.phi = weights_from_json(j.at("phi"), c.universe);
        c.psi = weights_from_json(j.at("psi"), c.universe);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("certificate json: ") + e.what());
    }
}

}  // namespace disjlab
