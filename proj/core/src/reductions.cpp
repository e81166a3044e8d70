#include "disjlab/reductions.hpp"

#include "disjlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

namespace disjlab {

namespace {

std::uint64_t factorial_capped(int n, std::uint64_t cap) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        if (f > cap / static_cast<std::uint64_t>(i)) return cap + 1;
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

std::vector<std::vector<int>> permutations_for(int N, const ReductionConfig& cfg, bool& all) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(N));
    std::iota(p.begin(), p.end(), 0);
    if (factorial_capped(N, cfg.max_permutations) <= cfg.max_permutations) {
        all = true;
        do {
            out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    all = false;
    std::mt19937_64 rng(cfg.seed);
    for (std::uint64_t i = 0; i < cfg.permutation_samples; ++i) {
        std::vector<int> q = p;
        for (std::size_t j = q.size(); j > 1; --j) std::swap(q[j - 1], q[rng() % j]);
        out.push_back(std::move(q));
    }
    return out;
}

BitString permute(const BitString& s, const std::vector<int>& to) {
    std::uint64_t z = 0;
    for (int i = 0; i < s.n; ++i) {
        if (s.test(i)) z |= 1ULL << to[static_cast<std::size_t>(i)];
    }
    return BitString(z, s.n);
}

}  // namespace

KfoldReduction reduce_search_from_kfold(const RandomizedProtocol& p, const TaskSpec& base, int K, int N,
                                        const ReductionConfig& cfg) {
    if (base.kind != TaskKind::SearchK) throw Error(ErrorKind::KindMismatch, "the block protocol must solve Search^k");
    if (N != base.n * base.k) {
        throw Error(ErrorKind::DimensionMismatch, "N = " + std::to_string(N) + " is not k*n = " + std::to_string(base.n * base.k));
    }
    if (p.input_bits() != N) throw Error(ErrorKind::DimensionMismatch, "block protocol input size differs from N");
    if (K < 0 || K > N) throw Error(ErrorKind::Range, "need 0 <= K <= N");
    if (cfg.alpha < 0) throw Error(ErrorKind::Range, "alpha must be nonnegative");

    KfoldReduction red{RandomizedProtocol::deterministic(ProtocolTree::constant(N, Output::rejected())),
                       TaskSpec::search_choose(N, K), 0, 1, 1, Rational(1), 0, true, false, {}};
    const int k = base.k;
    const int n = base.n;
    red.alpha = cfg.alpha > 0 ? cfg.alpha : 4.0 * K / k;
    red.bound_factor = std::pow(1 - red.alpha / 4, red.alpha * k / 4);
    red.alt_factor = std::pow(1 - red.alpha / 4, red.alpha * K);
    red.distinct_blocks = K <= k ? Rational(1) : Rational(0);
    for (int i = 0; i < K && i < k; ++i) {
        Rational step(N - i * n, N - i);
        step.canonicalize();
        red.distinct_blocks *= step;
    }
    if (K == 0) {
        red.degenerate = true;
        red.note = "K = 0: the empty answer is always correct";
    }

    const auto perms = permutations_for(N, cfg, red.all_permutations);
    red.permutations = perms.size();
    if (!red.all_permutations) red.note += (red.note.empty() ? "" : "; ") + std::string("permutations sampled, not enumerated");
    if (perms.size() * p.size() > cfg.max_branches) {
        throw Error(ErrorKind::CapExceeded, "composed protocol would have more than " + std::to_string(cfg.max_branches) + " coins");
    }

    std::vector<RandomizedProtocol::Branch> branches;
    const Rational weight(1, static_cast<long>(perms.size()));
    for (const auto& perm : perms) {
        auto to = std::make_shared<const std::vector<int>>(perm);
        auto back = std::make_shared<std::vector<int>>(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) (*back)[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
        for (const auto& b : p.branches()) {
            const ProtocolTree inner = b.tree;
            Program prog = [inner, to, back, K, k, n](Channel& ch) {
                auto map = [to](const BitString& s) { return permute(s, *to); };
                MappedChannel mc(ch, map, map);
                const Output out = inner.program()(mc);
                if (K == 0) return Output::of({});
                if (out.reject || static_cast<int>(out.values.size()) != k) return Output::rejected();
                std::vector<int> found;
                for (int blk = 0; blk < k && static_cast<int>(found.size()) < K; ++blk) {
                    const int v = out.values[static_cast<std::size_t>(blk)];
                    if (v < 1 || v > n) continue;
                    found.push_back((*back)[static_cast<std::size_t>(blk * n + v - 1)] + 1);
                }
                if (static_cast<int>(found.size()) < K) return Output::rejected();
                std::sort(found.begin(), found.end());
                return Output::of(std::move(found));
            };
            branches.push_back({weight * b.probability, ProtocolTree(inner.name() + "+permuted", N, inner.cost(), prog)});
        }
    }
    red.protocol = RandomizedProtocol(std::move(branches));
    return red;
}

std::string HalvingAccounting::str() const {
    return std::to_string(s + 1) + "*" + std::to_string(base_cost) + " + " + std::to_string(s) + "*" + std::to_string(k) +
           " + " + std::to_string(k) + "*" + std::to_string(part) + " + " + std::to_string(k) + "*" +
           std::to_string(std::bit_width(static_cast<unsigned>(part))) + " = " + std::to_string(total);
}

HalvingAccounting halving_accounting(int base_cost, int n, int k, int s) {
    if (s < 0 || s > 30) throw Error(ErrorKind::Range, "halving rounds must satisfy 0 <= s <= 30");
    if (n < 1 || k < 1) throw Error(ErrorKind::Range, "need n, k >= 1");
    if (s >= 1 && (1LL << (s - 1)) > n) {
        throw Error(ErrorKind::Parameter, "s = " + std::to_string(s) + " halvings exceed a block of " + std::to_string(n));
    }
    HalvingAccounting a;
    a.base_cost = base_cost;
    a.s = s;
    a.k = k;
    a.n = n;
    a.part = static_cast<int>((n + (1LL << s) - 1) >> s);
    a.padded = a.part << s;
    a.probes = (s + 1) * base_cost;
    a.bookkeeping = s * k;
    a.exchange = k * a.part;
    a.answer = k * std::bit_width(static_cast<unsigned>(a.part));
    a.total = a.probes + a.bookkeeping + a.exchange + a.answer;
    return a;
}

NdisjReduction reduce_ndisj_to_search(const RandomizedProtocol& p, const TaskSpec& base, int s,
                                      const ReductionConfig& cfg) {
    if (base.kind != TaskKind::NdisjK) throw Error(ErrorKind::KindMismatch, "the probe protocol must solve NDISJ^k");
    if (p.input_bits() != base.input_bits()) throw Error(ErrorKind::DimensionMismatch, "probe protocol input size differs");
    const int n = base.n;
    const int k = base.k;
    const HalvingAccounting acct = halving_accounting(p.cost(), n, k, s);

    std::uint64_t combos = 1;
    for (int r = 0; r <= s; ++r) {
        if (combos > cfg.max_branches / p.size()) {
            throw Error(ErrorKind::CapExceeded, "composed protocol would have more than " + std::to_string(cfg.max_branches) + " coins");
        }
        combos *= p.size();
    }

    std::vector<RandomizedProtocol::Branch> branches;
    std::vector<std::size_t> pick(static_cast<std::size_t>(s) + 1, 0);
    for (std::uint64_t c = 0; c < combos; ++c) {
        std::uint64_t rest = c;
        Rational prob = 1;
        std::vector<ProtocolTree> probes;
        for (int r = 0; r <= s; ++r) {
            const auto& b = p.branches()[rest % p.size()];
            rest /= p.size();
            prob *= b.probability;
            probes.push_back(b.tree);
        }
        const int part = acct.part;
        const int padded = acct.padded;
        Program prog = [probes, n, k, s, part, padded](Channel& ch) {
            const Output first = probes[0].program()(ch);
            std::vector<bool> accepted(static_cast<std::size_t>(k), false);
            if (!first.reject && static_cast<int>(first.values.size()) == k) {
                for (int b = 0; b < k; ++b) accepted[static_cast<std::size_t>(b)] = first.values[static_cast<std::size_t>(b)] == 1;
            }
            std::vector<int> lo(static_cast<std::size_t>(k), 0);
            int len = padded;
            for (int r = 1; r <= s; ++r) {
                const int half = len / 2;
                auto left = [&accepted, &lo, n, k, half](const BitString& in) {
                    std::uint64_t z = 0;
                    for (int b = 0; b < k; ++b) {
                        if (!accepted[static_cast<std::size_t>(b)]) continue;
                        for (int j = 0; j < half; ++j) {
                            const int pos = lo[static_cast<std::size_t>(b)] + j;
                            if (pos < n && in.test(b * n + pos)) z |= 1ULL << (b * n + j);
                        }
                    }
                    return BitString(z, in.n);
                };
                MappedChannel mc(ch, left, left);
                const Output probe = probes[static_cast<std::size_t>(r)].program()(mc);
                for (int b = 0; b < k; ++b) {
                    const bool go_left = accepted[static_cast<std::size_t>(b)] && !probe.reject &&
                                         static_cast<int>(probe.values.size()) == k &&
                                         probe.values[static_cast<std::size_t>(b)] == 1;
                    ch.send(Player::Alice, [go_left](const BitString&) { return go_left; });
                    if (accepted[static_cast<std::size_t>(b)] && !go_left) lo[static_cast<std::size_t>(b)] += half;
                }
                len = half;
            }
            std::vector<std::uint64_t> alice(static_cast<std::size_t>(k), 0);
            for (int b = 0; b < k; ++b) {
                const bool live = accepted[static_cast<std::size_t>(b)];
                const int base_pos = lo[static_cast<std::size_t>(b)];
                for (int j = 0; j < part; ++j) {
                    const int pos = base_pos + j;
                    const bool bit = ch.send(Player::Alice, [live, pos, n, b](const BitString& x) {
                        return live && pos < n && x.test(b * n + pos);
                    });
                    if (bit) alice[static_cast<std::size_t>(b)] |= 1ULL << j;
                }
            }
            const int width = std::bit_width(static_cast<unsigned>(part));
            Output out;
            for (int b = 0; b < k; ++b) {
                const std::uint64_t a = alice[static_cast<std::size_t>(b)];
                const int base_pos = lo[static_cast<std::size_t>(b)];
                auto answer = [a, base_pos, part, n, b](const BitString& y) {
                    for (int j = 0; j < part; ++j) {
                        const int pos = base_pos + j;
                        if (((a >> j) & 1U) && pos < n && y.test(b * n + pos)) return j + 1;
                    }
                    return 0;
                };
                int v = 0;
                for (int j = 0; j < width; ++j) {
                    if (ch.send(Player::Bob, [&answer, j](const BitString& y) { return ((answer(y) >> j) & 1) != 0; })) v |= 1 << j;
                }
                out.values.push_back(accepted[static_cast<std::size_t>(b)] && v > 0 ? base_pos + v : 0);
            }
            return out;
        };
        branches.push_back({prob, ProtocolTree("halving-search(s=" + std::to_string(s) + ")", n * k, acct.total, prog)});
    }
    return {RandomizedProtocol(std::move(branches)), TaskSpec::search(n, k), acct, s + 1};
}

}  // namespace disjlab
