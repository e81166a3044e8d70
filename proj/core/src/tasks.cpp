#include "disjlab/tasks.hpp"

#include "disjlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

namespace disjlab {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Claimed coordinates as 0-based positions, or nothing if the claim is malformed.
std::optional<std::vector<int>> claimed_positions(const TaskSpec& task, const Output& out) {
    const int want = task.kind == TaskKind::SearchChoose ? task.k : 1;
    if (static_cast<int>(out.values.size()) != want) return std::nullopt;
    std::vector<int> pos;
    for (int v : out.values) {
        if (v < 1 || v > task.n) return std::nullopt;
        pos.push_back(v - 1);
    }
    std::vector<int> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    return pos;
}

}  // namespace

std::string_view to_string(TaskKind k) {
    switch (k) {
        case TaskKind::NdisjK: return "ndisj";
        case TaskKind::SearchK: return "search";
        case TaskKind::SearchChoose: return "search-choose";
    }
    return "unknown";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Correct: return "correct";
        case Verdict::Reject: return "reject";
        case Verdict::Wrong: return "wrong";
    }
    return "unknown";
}

std::string_view to_string(CheckMode m) { return m == CheckMode::Explicit ? "explicit" : "strict-2bit"; }

TaskSpec TaskSpec::ndisj(int n, int k) {
    if (n < 1 || k < 1 || n * k > kMaxUniverse) throw Error(ErrorKind::Range, "NDISJ^k needs n, k >= 1 and nk <= 63");
    return {TaskKind::NdisjK, n, k};
}

TaskSpec TaskSpec::search(int n, int k) {
    if (n < 1 || k < 1 || n * k > kMaxUniverse) throw Error(ErrorKind::Range, "Search^k needs n, k >= 1 and nk <= 63");
    return {TaskKind::SearchK, n, k};
}

TaskSpec TaskSpec::search_choose(int N, int k) {
    if (N < 1 || N > kMaxUniverse || k < 0 || k > N) throw Error(ErrorKind::Range, "Search(N choose k) needs 0 <= k <= N");
    return {TaskKind::SearchChoose, N, k};
}

std::uint64_t TaskSpec::block(const BitString& s, int b) const {
    if (kind == TaskKind::SearchChoose) return s.bits;
    return (s.bits >> (b * n)) & universe_mask(n);
}

Verdict TaskSpec::classify(const InputPair& in, const Output& out) const {
    if (in.n() != input_bits()) throw Error(ErrorKind::DimensionMismatch, "inputs do not match " + str());
    switch (kind) {
        case TaskKind::NdisjK: {
            if (out.reject) return Verdict::Reject;
            if (static_cast<int>(out.values.size()) != k) return Verdict::Wrong;
            for (int b = 0; b < k; ++b) {
                const int want = (block(in.x, b) & block(in.y, b)) != 0 ? 1 : 0;
                if (out.values[static_cast<std::size_t>(b)] != want) return Verdict::Wrong;
            }
            return Verdict::Correct;
        }
        case TaskKind::SearchK: {
            if (out.reject) return (in.x.bits & in.y.bits) == 0 ? Verdict::Correct : Verdict::Reject;
            if (static_cast<int>(out.values.size()) != k) return Verdict::Wrong;
            for (int b = 0; b < k; ++b) {
                const std::uint64_t common = block(in.x, b) & block(in.y, b);
                const int v = out.values[static_cast<std::size_t>(b)];
                if (v == 0) {
                    if (common != 0) return Verdict::Wrong;
                } else if (v < 1 || v > n || !((common >> (v - 1)) & 1U)) {
                    return Verdict::Wrong;
                }
            }
            return Verdict::Correct;
        }
        case TaskKind::SearchChoose: {
            const int common = in.intersection_size();
            if (out.reject) return common < k ? Verdict::Correct : Verdict::Reject;
            const auto pos = claimed_positions(*this, out);
            if (!pos) return Verdict::Wrong;
            for (int p : *pos) {
                if (!in.x.test(p) || !in.y.test(p)) return Verdict::Wrong;
            }
            return Verdict::Correct;
        }
    }
    return Verdict::Wrong;
}

std::string TaskSpec::str() const {
    switch (kind) {
        case TaskKind::NdisjK: return "NDISJ^" + std::to_string(k) + "(n=" + std::to_string(n) + ")";
        case TaskKind::SearchK: return "Search^" + std::to_string(k) + "(n=" + std::to_string(n) + ")";
        case TaskKind::SearchChoose: return "Search(" + std::to_string(n) + " choose " + std::to_string(k) + ")";
    }
    return "unknown";
}

ProtocolTree trivial_ndisj(int n, int k) {
    const TaskSpec task = TaskSpec::ndisj(n, k);
    return ProtocolTree("trivial-ndisj", n * k, k * (n + 1), [task](Channel& ch) {
        std::uint64_t x = 0;
        for (int i = 0; i < task.n * task.k; ++i) {
            if (ch.send(Player::Alice, [i](const BitString& s) { return s.test(i); })) x |= 1ULL << i;
        }
        const BitString xs(x, task.n * task.k);
        Output out;
        for (int b = 0; b < task.k; ++b) {
            const std::uint64_t xb = task.block(xs, b);
            out.values.push_back(
                ch.send(Player::Bob, [&task, xb, b](const BitString& y) { return (task.block(y, b) & xb) != 0; }) ? 1 : 0);
        }
        return out;
    });
}

ProtocolTree trivial_search(int n, int k) {
    const TaskSpec task = TaskSpec::search(n, k);
    const int width = std::bit_width(static_cast<unsigned>(n));
    return ProtocolTree("trivial-search", n * k, k * (n + width), [task, width](Channel& ch) {
        std::uint64_t x = 0;
        for (int i = 0; i < task.n * task.k; ++i) {
            if (ch.send(Player::Alice, [i](const BitString& s) { return s.test(i); })) x |= 1ULL << i;
        }
        const BitString xs(x, task.n * task.k);
        Output out;
        for (int b = 0; b < task.k; ++b) {
            const std::uint64_t xb = task.block(xs, b);
            auto first = [&task, xb, b](const BitString& y) {
                const std::uint64_t c = task.block(y, b) & xb;
                return c == 0 ? 0 : std::countr_zero(c) + 1;
            };
            int v = 0;
            for (int j = 0; j < width; ++j) {
                if (ch.send(Player::Bob, [&first, j](const BitString& y) { return ((first(y) >> j) & 1) != 0; })) v |= 1 << j;
            }
            out.values.push_back(v);
        }
        return out;
    });
}

ProtocolTree trivial_search_choose(int N, int k) {
    TaskSpec::search_choose(N, k);  // range check
    const int cost = k == 0 ? N : 2 * N;
    return ProtocolTree("trivial-search-choose", N, cost, [N, k](Channel& ch) {
        std::uint64_t x = 0;
        for (int i = 0; i < N; ++i) {
            if (ch.send(Player::Alice, [i](const BitString& s) { return s.test(i); })) x |= 1ULL << i;
        }
        if (k == 0) return Output::of({});
        auto marked = [x, k](const BitString& y) {
            const std::uint64_t c = x & y.bits;
            return std::popcount(c) < k ? 0ULL : lowest_coordinates(c, k);
        };
        Output out;
        for (int i = 0; i < N; ++i) {
            if (ch.send(Player::Bob, [&marked, i](const BitString& y) { return ((marked(y) >> i) & 1U) != 0; })) {
                out.values.push_back(i + 1);
            }
        }
        if (out.values.empty()) return Output::rejected();
        return out;
    });
}

RandomizedProtocol constant_mixture(int input_bits, const std::vector<Output>& outputs) {
    if (outputs.empty()) throw Error(ErrorKind::Parameter, "need at least one output");
    std::vector<RandomizedProtocol::Branch> b;
    const Rational p(1, static_cast<long>(outputs.size()));
    for (const auto& o : outputs) b.push_back({p, ProtocolTree::constant(input_bits, o)});
    return RandomizedProtocol(std::move(b));
}

int verification_overhead(const TaskSpec& task, CheckMode mode) {
    const int claims = task.kind == TaskKind::SearchChoose ? task.k : 1;
    return mode == CheckMode::Strict2Bit ? 2 : 2 * claims + 2;
}

RandomizedProtocol make_verified(const RandomizedProtocol& p, const TaskSpec& task, CheckMode mode) {
    if (!(task.kind == TaskKind::SearchChoose || (task.kind == TaskKind::SearchK && task.k == 1))) {
        throw Error(ErrorKind::KindMismatch, "verification needs a Search(N choose k) or single-block Search task");
    }
    if (p.input_bits() != task.input_bits()) throw Error(ErrorKind::DimensionMismatch, "protocol and task sizes differ");
    const int extra = verification_overhead(task, mode);
    std::vector<RandomizedProtocol::Branch> out;
    for (const auto& b : p.branches()) {
        const ProtocolTree inner = b.tree;
        Program prog = [inner, task, mode](Channel& ch) {
            const Output claim = inner.program()(ch);
            if (claim.reject) return claim;
            if (task.kind == TaskKind::SearchK && claim.values.size() == 1 && claim.values[0] == 0) return Output::rejected();
            const auto pos = claimed_positions(task, claim);
            if (!pos) return Output::rejected();
            auto holds = [pos](const BitString& s) {
                return std::all_of(pos->begin(), pos->end(), [&s](int c) { return s.test(c); });
            };
            bool accept = false;
            if (mode == CheckMode::Strict2Bit) {
                const bool a = ch.send(Player::Alice, holds);
                const bool bb = ch.send(Player::Bob, holds);
                accept = a && bb;
            } else {
                bool all = true;
                for (int c : *pos) all &= ch.send(Player::Alice, [c](const BitString& s) { return s.test(c); });
                for (int c : *pos) all &= ch.send(Player::Bob, [c](const BitString& s) { return s.test(c); });
                const bool a = ch.send(Player::Alice, [all](const BitString&) { return all; });
                const bool bb = ch.send(Player::Bob, [a](const BitString&) { return a; });
                accept = a && bb;
            }
            return accept ? claim : Output::rejected();
        };
        out.push_back({b.probability, ProtocolTree(inner.name() + "+verified", inner.input_bits(), inner.cost() + extra, prog)});
    }
    return RandomizedProtocol(std::move(out));
}

std::vector<InputPair> all_input_pairs(int bits, std::uint64_t cap) {
    if (bits < 0 || 2 * bits >= 63 || (1ULL << (2 * bits)) > cap) {
        throw Error(ErrorKind::CapExceeded, "input space of 4^" + std::to_string(bits) + " pairs exceeds the cap");
    }
    std::vector<InputPair> out;
    out.reserve(1ULL << (2 * bits));
    for (std::uint64_t x = 0; x < (1ULL << bits); ++x) {
        for (std::uint64_t y = 0; y < (1ULL << bits); ++y) out.emplace_back(BitString(x, bits), BitString(y, bits));
    }
    return out;
}

SuccessReport success_probability(const RandomizedProtocol& p, const TaskSpec& task, const SuccessOptions& opt) {
    if (p.input_bits() != task.input_bits()) throw Error(ErrorKind::DimensionMismatch, "protocol and task sizes differ");
    const std::vector<InputPair> inputs = opt.inputs ? *opt.inputs : all_input_pairs(task.input_bits(), opt.run_cap);
    if (inputs.empty()) throw Error(ErrorKind::Parameter, "no inputs to evaluate");
    const std::uint64_t per_input = opt.mode == SuccessMode::Exact ? p.size() : opt.trials;
    if (per_input == 0 || inputs.size() > opt.run_cap / per_input) {
        throw Error(ErrorKind::CapExceeded, "evaluation needs more than " + std::to_string(opt.run_cap) + " runs");
    }

    SuccessReport rep;
    rep.mode = opt.mode;
    rep.aggregate = opt.aggregate;
    rep.inputs_checked = inputs.size();
    auto note_bits = [&](int bits) {
        ++rep.bits_histogram[bits];
        rep.max_bits = std::max(rep.max_bits, bits);
        ++rep.runs;
    };

    if (opt.mode == SuccessMode::Exact) {
        std::optional<Rational> worst;
        Rational total = 0;
        Rational max_wrong = 0;
        for (const auto& in : inputs) {
            Rational good = 0;
            Rational bad = 0;
            for (std::size_t c = 0; c < p.size(); ++c) {
                const RunResult r = run_protocol(p, in, c);
                note_bits(r.bits);
                const Verdict v = task.classify(in, r.output);
                if (v == Verdict::Correct) good += p.branches()[c].probability;
                if (v == Verdict::Wrong) bad += p.branches()[c].probability;
            }
            if (!worst || good < *worst) {
                worst = good;
                rep.worst_input = in;
            }
            total += good;
            if (bad > max_wrong) max_wrong = bad;
        }
        rep.exact = opt.aggregate == Aggregate::WorstCase ? *worst : Rational(total / static_cast<long>(inputs.size()));
        rep.estimate = rep.ci_low = rep.ci_high = rep.exact->get_d();
        rep.max_wrong_exact = max_wrong;
        rep.max_wrong = max_wrong.get_d();
        return rep;
    }

    std::vector<double> cumulative;
    double acc = 0;
    for (const auto& b : p.branches()) cumulative.push_back(acc += b.probability.get_d());
    cumulative.back() = 1.0;
    std::mt19937_64 rng(opt.seed);
    const double t = static_cast<double>(opt.trials);
    double worst = 2;
    double sum = 0;
    for (const auto& in : inputs) {
        std::uint64_t good = 0;
        std::uint64_t bad = 0;
        for (std::uint64_t i = 0; i < opt.trials; ++i) {
            const double u = uniform01(rng);
            const auto c = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            const RunResult r = run_protocol(p, in, std::min(c, p.size() - 1));
            note_bits(r.bits);
            const Verdict v = task.classify(in, r.output);
            good += v == Verdict::Correct ? 1 : 0;
            bad += v == Verdict::Wrong ? 1 : 0;
        }
        const double est = static_cast<double>(good) / t;
        if (est < worst) {
            worst = est;
            rep.worst_input = in;
        }
        sum += est;
        rep.max_wrong = std::max(rep.max_wrong, static_cast<double>(bad) / t);
    }
    const double n_eff = opt.aggregate == Aggregate::WorstCase ? t : t * static_cast<double>(inputs.size());
    rep.estimate = opt.aggregate == Aggregate::WorstCase ? worst : sum / static_cast<double>(inputs.size());
    const double half = opt.z * std::sqrt(rep.estimate * (1 - rep.estimate) / n_eff);
    rep.ci_low = std::max(0.0, rep.estimate - half);
    rep.ci_high = std::min(1.0, rep.estimate + half);
    return rep;
}

bool is_accepting(const TaskSpec& task, const Output& out) {
    if (out.reject) return false;
    if (task.kind == TaskKind::NdisjK) {
        return std::all_of(out.values.begin(), out.values.end(), [](int v) { return v == 1; });
    }
    if (task.kind == TaskKind::SearchK && task.k == 1) return out.values.size() == 1 && out.values[0] != 0;
    return true;
}

std::vector<Rectangle> LeafReport::accepting_family() const {
    std::vector<Rectangle> out;
    for (const auto& l : leaves) {
        if (l.accepting && !l.rect.empty()) out.push_back(l.rect);
    }
    return out;
}

LeafReport leaf_rectangle_check(const ProtocolTree& tree, const TaskSpec& task, std::uint64_t cap) {
    if (tree.input_bits() != task.input_bits()) throw Error(ErrorKind::DimensionMismatch, "protocol and task sizes differ");
    const ExplicitTree t = tree.materialize();
    const int bits = tree.input_bits();

    LeafReport rep;
    std::unordered_map<std::string, std::size_t> by_transcript;
    struct Walk {
        int node;
        std::string path;
    };
    std::vector<Walk> stack{{0, ""}};
    while (!stack.empty()) {
        Walk w = std::move(stack.back());
        stack.pop_back();
        const ExplicitNode& node = t.nodes[static_cast<std::size_t>(w.node)];
        if (node.leaf) {
            by_transcript.emplace(w.path, rep.leaves.size());
            LeafInfo info;
            info.transcript = w.path;
            info.output = node.output;
            info.accepting = is_accepting(task, node.output);
            rep.leaves.push_back(std::move(info));
            continue;
        }
        stack.push_back({node.child[1], w.path + '1'});
        stack.push_back({node.child[0], w.path + '0'});
    }
    std::sort(rep.leaves.begin(), rep.leaves.end(),
              [](const LeafInfo& a, const LeafInfo& b) { return a.transcript < b.transcript; });
    by_transcript.clear();
    for (std::size_t i = 0; i < rep.leaves.size(); ++i) by_transcript.emplace(rep.leaves[i].transcript, i);

    std::vector<std::set<BitString>> rows(rep.leaves.size());
    std::vector<std::set<BitString>> cols(rep.leaves.size());
    std::uint64_t reached = 0;
    const std::vector<InputPair> inputs = all_input_pairs(bits, cap);
    for (const auto& in : inputs) {
        const RunResult r = run_tree(tree, in);
        const auto it = by_transcript.find(r.transcript);
        if (it == by_transcript.end()) {
            rep.partitions = false;
            continue;
        }
        LeafInfo& leaf = rep.leaves[it->second];
        ++leaf.reaching;
        ++reached;
        rows[it->second].insert(in.x);
        cols[it->second].insert(in.y);
        if (!(r.output == leaf.output)) leaf.output_consistent = false;
    }
    if (reached != inputs.size()) rep.partitions = false;

    const bool witnessed = task.kind == TaskKind::SearchChoose || (task.kind == TaskKind::SearchK && task.k == 1);
    const int wk = task.kind == TaskKind::SearchChoose ? task.k : 1;
    for (std::size_t i = 0; i < rep.leaves.size(); ++i) {
        LeafInfo& leaf = rep.leaves[i];
        leaf.rect = Rectangle(bits, {rows[i].begin(), rows[i].end()}, {cols[i].begin(), cols[i].end()});
        leaf.is_rectangle = leaf.reaching == leaf.rect.size();
        rep.all_rectangles &= leaf.is_rectangle;
        rep.outputs_consistent &= leaf.output_consistent;
        if (!leaf.accepting) continue;
        ++rep.accepting_leaves;
        if (leaf.rect.empty()) continue;
        ++rep.nonempty_accepting;
        if (!witnessed) continue;
        leaf.witness = witness_set(leaf.rect, wk);
        if (!leaf.witness) {
            rep.accepting_witnessed = false;
            continue;
        }
        const std::uint64_t common = leaf.rect.common_mask();
        for (int v : leaf.output.values) {
            if (v >= 1 && v <= bits && !((common >> (v - 1)) & 1U)) leaf.claims_in_witness = false;
        }
        rep.accepting_witnessed &= leaf.claims_in_witness;
    }
    return rep;
}

std::vector<std::pair<Rectangle, Rational>> protocol_lp_solution(const RandomizedProtocol& p, const TaskSpec& task) {
    std::map<std::pair<std::vector<BitString>, std::vector<BitString>>, std::size_t> index;
    std::vector<std::pair<Rectangle, Rational>> out;
    for (const auto& b : p.branches()) {
        const LeafReport rep = leaf_rectangle_check(b.tree, task);
        for (const auto& r : rep.accepting_family()) {
            const auto key = std::make_pair(r.rows(), r.cols());
            const auto it = index.find(key);
            if (it == index.end()) {
                index.emplace(key, out.size());
                out.emplace_back(r, b.probability);
            } else {
                out[it->second].second += b.probability;
            }
        }
    }
    return out;
}

BridgeReport protocol_to_lp(const RandomizedProtocol& p, const TaskSpec& task) {
    int n = 0;
    int k = 0;
    if (task.kind == TaskKind::SearchChoose) {
        n = task.n;
        k = task.k;
    } else if (task.kind == TaskKind::SearchK && task.k == 1) {
        n = task.n;
        k = 1;
    } else {
        throw Error(ErrorKind::KindMismatch, "the search LP models Search(N choose k) tasks");
    }
    BridgeReport rep;
    rep.success = *success_probability(p, task).exact;
    const LPInstance lp = build_search_lp(n, k, rep.success);
    const auto solution = protocol_lp_solution(p, task);
    rep.rectangles = solution.size();
    rep.check = check_primal(lp, solution);
    rep.cost = p.cost();
    rep.cost_bound = pow2(rep.cost);
    rep.within_bound = rep.check.cost <= rep.cost_bound;
    return rep;
}

}  // namespace disjlab
