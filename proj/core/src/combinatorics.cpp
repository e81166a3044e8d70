#include "disjlab/combinatorics.hpp"

#include "disjlab/errors.hpp"

#include <algorithm>

namespace disjlab {

BigInt binom(long n, long k) {
    if (n < 0 || k < 0) throw Error(ErrorKind::Range, "binom with negative argument");
    if (k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

BigInt MuParams::support_size() const {
    if (!valid()) return 0;
    return binom(n, m) * binom(m, k) * binom(n - m, m - k);
}

std::string to_string(const MuParams& p) {
    return "(k=" + std::to_string(p.k) + ",n=" + std::to_string(p.n) + ",m=" + std::to_string(p.m) + ")";
}

MuDistribution::MuDistribution(MuParams p) : params_(p) {
    if (!p.valid()) throw Error(ErrorKind::SupportEmpty, "mu" + to_string(p) + " has empty support");
    support_ = p.support_size();
    mass_ = Rational(BigInt(1), support_);
    mass_.canonicalize();
}

Rational MuDistribution::prob(const InputPair& pair) const {
    if (pair.n() != params_.n) throw Error(ErrorKind::DimensionMismatch, "pair universe differs from mu universe");
    return in_support(pair) ? mass_ : Rational(0);
}

Rational mu_prob(const MuParams& p, const InputPair& pair) { return MuDistribution(p).prob(pair); }

std::vector<InputPair> enumerate_support(const MuParams& p, std::uint64_t cap) {
    if (p.k < 0 || p.m < 0 || p.n < 0 || p.n > kMaxUniverse) throw Error(ErrorKind::Range, "bad mu parameters");
    if (!p.valid()) return {};
    const BigInt size = p.support_size();
    if (size > BigInt(std::to_string(cap))) {
        throw Error(ErrorKind::CapExceeded, "support of mu" + to_string(p) + " has " + size.get_str() +
                                                " pairs, cap is " + std::to_string(cap));
    }
    std::vector<InputPair> out;
    out.reserve(size.get_ui());
    for_each_support_pair(p, [&](const InputPair& pair) { out.push_back(pair); });
    return out;
}

std::uint64_t random_subset(std::uint64_t of, int weight, std::mt19937_64& rng) {
    std::vector<int> positions;
    for (std::uint64_t m = of; m; m &= m - 1) positions.push_back(std::countr_zero(m));
    if (weight < 0 || weight > static_cast<int>(positions.size())) {
        throw Error(ErrorKind::SupportEmpty, "cannot draw subset of that size");
    }
    // Partial Fisher-Yates with an explicit modulo draw, so that streams are
    // reproducible across standard library implementations.
    std::uint64_t out = 0;
    for (int i = 0; i < weight; ++i) {
        const auto remaining = static_cast<std::uint64_t>(positions.size()) - static_cast<std::uint64_t>(i);
        const std::uint64_t j = static_cast<std::uint64_t>(i) + rng() % remaining;
        std::swap(positions[static_cast<std::size_t>(i)], positions[j]);
        out |= 1ULL << positions[static_cast<std::size_t>(i)];
    }
    return out;
}

InputPair sample_mu(const MuParams& p, std::mt19937_64& rng) {
    if (!p.valid()) throw Error(ErrorKind::SupportEmpty, "mu" + to_string(p) + " has empty support");
    const std::uint64_t all = universe_mask(p.n);
    const std::uint64_t x = random_subset(all, p.m, rng);
    const std::uint64_t common = random_subset(x, p.k, rng);
    const std::uint64_t rest = random_subset(all & ~x, p.m - p.k, rng);
    return InputPair(BitString(x, p.n), BitString(common | rest, p.n));
}

std::string_view to_string(RemovalIdentity id) {
    switch (id) {
        case RemovalIdentity::I: return "I";
        case RemovalIdentity::II: return "II";
        case RemovalIdentity::III: return "III";
        case RemovalIdentity::IV: return "IV";
    }
    return "?";
}

RemovalIdentity parse_identity(std::string_view text) {
    if (text == "I") return RemovalIdentity::I;
    if (text == "II") return RemovalIdentity::II;
    if (text == "III") return RemovalIdentity::III;
    if (text == "IV") return RemovalIdentity::IV;
    throw Error(ErrorKind::Parse, "unknown identity '" + std::string(text) + "'");
}

IdentityReport check_lemma4(RemovalIdentity id, const MuParams& p, std::uint64_t cap) {
    const int k = p.k;
    const int n = p.n;
    const int m = p.m;
    IdentityReport report;
    report.identity = id;
    report.params = p;
    switch (id) {
        case RemovalIdentity::I:
            report.lhs = {2 * k, n + k, m + k};
            report.rhs = {k, n, m};
            report.coefficient = Rational(binom(n, k), binom(n + k, 2 * k));
            break;
        case RemovalIdentity::II:
            report.lhs = {k, n + k, m + k};
            report.rhs = {0, n, m};
            report.coefficient = Rational(BigInt(1), binom(n + k, k));
            break;
        case RemovalIdentity::III:
            report.lhs = {k, n, m};
            report.rhs = {0, n - k, m - k};
            report.coefficient = Rational(BigInt(1), binom(n, k));
            break;
        case RemovalIdentity::IV:
            report.lhs = {k + 1, n, m};
            report.rhs = {1, n - k, m - k};
            report.coefficient = Rational(BigInt(n - k), binom(n, k + 1));
            break;
    }
    if (k < 0 || !report.lhs.valid() || !report.rhs.valid()) {
        throw Error(ErrorKind::Range, "identity " + std::string(to_string(id)) + " undefined at " + to_string(p));
    }
    report.coefficient.canonicalize();

    if (report.lhs.support_size() > BigInt(std::to_string(cap))) {
        throw Error(ErrorKind::CapExceeded, "identity support above cap at " + to_string(p));
    }

    const MuDistribution lhs(report.lhs);
    const MuDistribution rhs(report.rhs);
    Rational worst = 0;
    std::uint64_t checked = 0;
    for_each_support_pair(report.lhs, [&](const InputPair& pair) {
        const std::uint64_t removed = lowest_coordinates(pair.x.bits & pair.y.bits, k);
        const InputPair reduced(remove_coordinates(pair.x, removed), remove_coordinates(pair.y, removed));
        const Rational diff = abs(lhs.prob(pair) - report.coefficient * rhs.prob(reduced));
        if (diff > worst) worst = diff;
        ++checked;
    });
    report.max_abs_difference = worst;
    report.pairs_checked = checked;
    return report;
}

Rational intersection_ratio(int n, int k) {
    if (k < 0 || n < 0 || k > n) throw Error(ErrorKind::Range, "intersection_ratio needs 0 <= k <= n");
    Rational q(binom(n, k) * binom(n + k, k), binom(n + k, 2 * k));
    q.canonicalize();
    q *= pow2(-(k + 1));
    return q;
}

}  // namespace disjlab
