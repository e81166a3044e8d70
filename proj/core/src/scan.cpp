#include "disjlab/scan.hpp"

#include "disjlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace disjlab {

namespace {

std::string approx(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Population {
    int n;
    int m;
    std::vector<std::uint64_t> sets;
    std::vector<std::uint8_t> inter;
    std::vector<BigInt> support;  // |T_t| for t = 0..m

    Population(int n_, int m_) : n(n_), m(m_), sets(masks_of_weight(n_, m_)) {
        const std::size_t s = sets.size();
        inter.resize(s * s);
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) inter[i * s + j] = static_cast<std::uint8_t>(std::popcount(sets[i] & sets[j]));
        }
        for (int t = 0; t <= m; ++t) support.push_back(binom(n, m) * binom(m, t) * binom(n - m, m - t));
    }

    std::vector<std::uint64_t> histogram(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint64_t> h(static_cast<std::size_t>(m) + 1, 0);
        const std::size_t s = sets.size();
        for (auto i : a) {
            const std::uint8_t* row = &inter[i * s];
            for (auto j : b) ++h[row[j]];
        }
        return h;
    }

    Rational mass(const std::vector<std::uint64_t>& h, int t) const {
        if (t < 0 || t > m || support[static_cast<std::size_t>(t)] == 0) return 0;
        Rational q(BigInt(static_cast<unsigned long>(h[static_cast<std::size_t>(t)])), support[static_cast<std::size_t>(t)]);
        q.canonicalize();
        return q;
    }
};

std::vector<std::uint32_t> members(std::uint64_t mask) {
    std::vector<std::uint32_t> out;
    for (; mask; mask &= mask - 1) out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    return out;
}

}  // namespace

std::string_view to_string(ScanPopulation p) {
    switch (p) {
        case ScanPopulation::Auto: return "auto";
        case ScanPopulation::Exhaustive: return "exhaustive";
        case ScanPopulation::Sampled: return "sampled";
        case ScanPopulation::FullOnly: return "full-only";
    }
    return "unknown";
}

ScanPopulation parse_population(std::string_view text) {
    if (text == "auto") return ScanPopulation::Auto;
    if (text == "exhaustive") return ScanPopulation::Exhaustive;
    if (text == "sampled") return ScanPopulation::Sampled;
    if (text == "full-only") return ScanPopulation::FullOnly;
    throw Error(ErrorKind::Parameter, "unknown population '" + std::string(text) + "'");
}

void ScanConfig::validate() const {
    if (!std::isfinite(gamma)) throw Error(ErrorKind::Range, "gamma must be finite");
    if (!(delta > 0) || !std::isfinite(delta)) throw Error(ErrorKind::Range, "delta must be positive");
    if (population == ScanPopulation::Sampled && samples == 0) throw Error(ErrorKind::Range, "sample count must be positive");
}

ScanReport sampling_lemma_scan(const MuParams& p, int target_k, const ScanConfig& cfg) {
    cfg.validate();
    const MuParams zero{0, p.n, p.m};
    const MuParams target{target_k, p.n, p.m};
    if (!zero.valid() || !target.valid()) {
        throw Error(ErrorKind::SupportEmpty, "needs valid " + to_string(zero) + " and " + to_string(target));
    }
    const Population pop(p.n, p.m);
    const std::size_t s = pop.sets.size();

    ScanReport rep;
    rep.n = p.n;
    rep.m = p.m;
    rep.k = target_k;
    rep.config = cfg;
    rep.bar = std::exp2(-cfg.gamma * p.n);

    ScanPopulation kind = cfg.population;
    const bool small = 2 * s < 63 && (1ULL << (2 * s)) <= cfg.exhaustive_limit;
    if (kind == ScanPopulation::Auto) kind = small ? ScanPopulation::Exhaustive : ScanPopulation::Sampled;
    if (kind == ScanPopulation::Exhaustive && !small) {
        throw Error(ErrorKind::CapExceeded, "exhaustive scan over 2^" + std::to_string(2 * s) + " rectangles exceeds the limit");
    }
    rep.summary.population = std::string(to_string(kind));

    const bool have_one = MuParams{1, p.n, p.m}.valid();
    auto record = [&](std::string id, const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        const auto h = pop.histogram(a, b);
        ScanRow row;
        row.id = std::move(id);
        row.mu0 = pop.mass(h, 0);
        row.muk = pop.mass(h, target_k);
        if (have_one) row.mu1 = pop.mass(h, 1);
        if (row.mu0 != 0) row.ratio = Rational(row.muk / row.mu0);
        row.above_bar = row.mu0 != 0 && row.mu0.get_d() >= rep.bar;
        rep.rows.push_back(std::move(row));
    };

    std::vector<std::uint32_t> all(s);
    for (std::size_t i = 0; i < s; ++i) all[i] = static_cast<std::uint32_t>(i);

    switch (kind) {
        case ScanPopulation::FullOnly:
            record("full", all, all);
            break;
        case ScanPopulation::Exhaustive:
            for (std::uint64_t a = 1; a < (1ULL << s); ++a) {
                const auto rows = members(a);
                for (std::uint64_t b = 1; b < (1ULL << s); ++b) {
                    record("r" + std::to_string(a) + "c" + std::to_string(b), rows, members(b));
                }
            }
            break;
        case ScanPopulation::Sampled:
        case ScanPopulation::Auto: {
            std::mt19937_64 rng(cfg.seed);
            std::vector<std::uint32_t> a;
            std::vector<std::uint32_t> b;
            for (std::uint64_t i = 0; i < cfg.samples; ++i) {
                const double pa = 0.5 + 0.5 * uniform01(rng);
                const double pb = 0.5 + 0.5 * uniform01(rng);
                a.clear();
                b.clear();
                for (std::uint32_t j = 0; j < s; ++j) {
                    if (uniform01(rng) < pa) a.push_back(j);
                }
                for (std::uint32_t j = 0; j < s; ++j) {
                    if (uniform01(rng) < pb) b.push_back(j);
                }
                record("s" + std::to_string(i), a, b);
            }
            break;
        }
    }

    ScanSummary& sum = rep.summary;
    sum.examined = rep.rows.size();
    std::vector<double> ratios;
    const Rational half_power = pow2(-(target_k + 1));
    const double slack_term = target_k * std::exp2(-cfg.delta * (p.n - target_k + 1));
    for (const auto& r : rep.rows) {
        if (!r.above_bar) continue;
        ++sum.above_bar;
        const Rational& q = *r.ratio;
        if (!sum.min_ratio || q < *sum.min_ratio) {
            sum.min_ratio = q;
            sum.min_ratio_id = r.id;
        }
        ratios.push_back(q.get_d());
        if (r.muk < r.mu0 * half_power) ++sum.below_half_power;
        if (r.mu1) {
            const Rational one = *r.mu1 / r.mu0;
            if (!sum.min_one_ratio || one < *sum.min_one_ratio) sum.min_one_ratio = one;
            if (one < Rational(2, 3)) ++sum.below_two_thirds;
        }
        const double slack = r.muk.get_d() - (r.mu0.get_d() * std::exp2(-target_k) - slack_term);
        if (!sum.min_slack || slack < *sum.min_slack) sum.min_slack = slack;
    }
    sum.empty_population = sum.above_bar == 0;
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        auto q = [&](double f) { return ratios[static_cast<std::size_t>(f * static_cast<double>(ratios.size() - 1))]; };
        sum.q25 = q(0.25);
        sum.median = q(0.5);
        sum.q75 = q(0.75);
        sum.max_ratio = ratios.back();
    }
    return rep;
}

std::string scan_csv(const ScanReport& rep) {
    std::ostringstream out;
    out << "id,mu0[exact-rational],muk[exact-rational],ratio[exact-rational],ratio_approx[float-tol],above_bar\n";
    for (const auto& r : rep.rows) {
        out << r.id << ',' << to_string(r.mu0) << ',' << to_string(r.muk) << ','
            << (r.ratio ? to_string(*r.ratio) : "") << ',' << (r.ratio ? approx(r.ratio->get_d()) : "") << ','
            << (r.above_bar ? 1 : 0) << '\n';
    }
    const ScanSummary& s = rep.summary;
    auto line = [&](const std::string& key, const std::string& value) { out << "summary," << key << ',' << value << '\n'; };
    line("n", std::to_string(rep.n));
    line("m", std::to_string(rep.m));
    line("k", std::to_string(rep.k));
    line("seed", std::to_string(rep.config.seed));
    line("population", s.population);
    line("examined", std::to_string(s.examined));
    line("bar[float-tol]", approx(rep.bar));
    line("above_bar", std::to_string(s.above_bar));
    line("min_ratio[exact-rational]", s.min_ratio ? to_string(*s.min_ratio) : "");
    line("min_ratio_approx[float-tol]", s.min_ratio ? approx(s.min_ratio->get_d()) : "");
    line("min_ratio_id", s.min_ratio_id.value_or(""));
    line("q25[float-tol]", approx(s.q25));
    line("median[float-tol]", approx(s.median));
    line("q75[float-tol]", approx(s.q75));
    line("max_ratio[float-tol]", approx(s.max_ratio));
    line("below_half_power", std::to_string(s.below_half_power));
    line("min_mu1_over_mu0[exact-rational]", s.min_one_ratio ? to_string(*s.min_one_ratio) : "");
    line("below_two_thirds", std::to_string(s.below_two_thirds));
    line("min_slack[float-tol]", s.min_slack ? approx(*s.min_slack) : "");
    line("empty_population_warning", s.empty_population ? "1" : "0");
    return out.str();
}

}  // namespace disjlab
