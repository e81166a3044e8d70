#pragma once

#include "disjlab/lp.hpp"
#include "disjlab/protocol.hpp"
#include "disjlab/rectangles.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace disjlab {

enum class TaskKind { NdisjK, SearchK, SearchChoose };

enum class Verdict { Correct, Reject, Wrong };

std::string_view to_string(TaskKind k);
std::string_view to_string(Verdict v);

/// NdisjK and SearchK: k blocks of n coordinates, input size kn.
/// SearchChoose: one block of N coordinates; k distinct common coordinates
/// are wanted, and reject is the right answer when fewer than k exist.
struct TaskSpec {
    TaskKind kind = TaskKind::NdisjK;
    int n = 1;
    int k = 1;

    static TaskSpec ndisj(int n, int k = 1);
    static TaskSpec search(int n, int k = 1);
    static TaskSpec search_choose(int N, int k);

    int input_bits() const { return kind == TaskKind::SearchChoose ? n : n * k; }
    std::uint64_t block(const BitString& s, int b) const;
    Verdict classify(const InputPair& inputs, const Output& out) const;
    std::string str() const;
};

/// Alice sends every bit of x, Bob answers each block's NDISJ bit.
ProtocolTree trivial_ndisj(int n, int k = 1);
/// Alice sends x, Bob names each block's first common coordinate in ceil(log2(n+1)) bits.
ProtocolTree trivial_search(int n, int k = 1);
/// Alice sends x, Bob marks the first k common coordinates (none if fewer exist).
ProtocolTree trivial_search_choose(int N, int k);
/// Uniform mixture over the given constant outputs.
RandomizedProtocol constant_mixture(int input_bits, const std::vector<Output>& outputs);

enum class CheckMode { Explicit, Strict2Bit };

std::string_view to_string(CheckMode m);

/// Wraps a search protocol so every non-reject claim is checked by both
/// players; failed or malformed claims become reject. Explicit mode sends the
/// k claimed bits each way plus two agreement bits; Strict2Bit sends one
/// verdict bit per player.
RandomizedProtocol make_verified(const RandomizedProtocol& p, const TaskSpec& task, CheckMode mode = CheckMode::Explicit);
int verification_overhead(const TaskSpec& task, CheckMode mode);

enum class SuccessMode { Exact, MonteCarlo };
enum class Aggregate { WorstCase, Uniform };

struct SuccessOptions {
    SuccessMode mode = SuccessMode::Exact;
    Aggregate aggregate = Aggregate::WorstCase;
    std::uint64_t seed = 0;
    std::uint64_t trials = 200;
    double z = 3.0;
    /// Limit on protocol runs (inputs times coins, or inputs times trials).
    std::uint64_t run_cap = 1ULL << 26;
    /// Restrict to these inputs instead of the whole input space.
    std::optional<std::vector<InputPair>> inputs;
};

struct SuccessReport {
    SuccessMode mode = SuccessMode::Exact;
    Aggregate aggregate = Aggregate::WorstCase;
    std::optional<Rational> exact;
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 0;
    InputPair worst_input;
    std::optional<Rational> max_wrong_exact;
    double max_wrong = 0;
    std::map<int, std::uint64_t> bits_histogram;
    int max_bits = 0;
    std::uint64_t inputs_checked = 0;
    std::uint64_t runs = 0;
};

SuccessReport success_probability(const RandomizedProtocol& p, const TaskSpec& task, const SuccessOptions& opt = {});

/// All pairs of `bits`-bit strings, refusing more than `cap` pairs.
std::vector<InputPair> all_input_pairs(int bits, std::uint64_t cap = 1ULL << 24);

struct LeafInfo {
    std::string transcript;
    Output output;
    Rectangle rect;  // rows x cols of the reaching set
    std::uint64_t reaching = 0;
    bool is_rectangle = true;
    bool output_consistent = true;
    bool accepting = false;
    std::optional<WitnessSet> witness;
    bool claims_in_witness = true;
};

struct LeafReport {
    std::vector<LeafInfo> leaves;
    std::size_t accepting_leaves = 0;
    std::size_t nonempty_accepting = 0;
    bool all_rectangles = true;
    bool outputs_consistent = true;
    bool partitions = true;
    bool accepting_witnessed = true;

    /// Nonempty rectangles of accepting leaves.
    std::vector<Rectangle> accepting_family() const;
    bool ok() const { return all_rectangles && outputs_consistent && partitions && accepting_witnessed; }
};

/// Accepting means a non-reject output (Search kinds) or all ones (NdisjK).
bool is_accepting(const TaskSpec& task, const Output& out);

LeafReport leaf_rectangle_check(const ProtocolTree& tree, const TaskSpec& task, std::uint64_t cap = 1ULL << 20);

/// Weighted accepting-leaf rectangles of every tree in the mixture: the
/// primal point a protocol induces in the search LP.
std::vector<std::pair<Rectangle, Rational>> protocol_lp_solution(const RandomizedProtocol& p, const TaskSpec& task);

struct BridgeReport {
    PrimalCheck check;
    Rational success;
    int cost = 0;
    Rational cost_bound;  // 2^cost
    std::size_t rectangles = 0;
    bool within_bound = false;
};

/// Builds the search LP at sigma = exact success of p, and checks the
/// protocol's leaf rectangles against it.
BridgeReport protocol_to_lp(const RandomizedProtocol& p, const TaskSpec& task);

}  // namespace disjlab
