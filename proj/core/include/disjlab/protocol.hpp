#pragma once

#include "disjlab/bitstring.hpp"
#include "disjlab/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace disjlab {

enum class Player { Alice, Bob };

std::string_view to_string(Player p);

/// A protocol's agreed answer. Coordinates are 1-based; 0 means "none".
struct Output {
    bool reject = false;
    std::vector<int> values;

    static Output rejected() { return {true, {}}; }
    static Output of(std::vector<int> v) { return {false, std::move(v)}; }

    std::string str() const;
    nlohmann::json to_json() const;
    static Output from_json(const nlohmann::json& j);

    friend bool operator==(const Output&, const Output&) = default;
};

/// A message bit computed by the sending player from its own input only.
using MessageFn = std::function<bool(const BitString&)>;

class Channel {
public:
    virtual ~Channel() = default;
    virtual bool send(Player from, const MessageFn& message) = 0;
};

/// Runs a program on one input pair and records the transcript.
class ExecChannel : public Channel {
public:
    ExecChannel(InputPair inputs, int limit) : inputs_(std::move(inputs)), limit_(limit) {}

    bool send(Player from, const MessageFn& message) override;

    const std::string& transcript() const { return transcript_; }
    int bits() const { return static_cast<int>(transcript_.size()); }

private:
    InputPair inputs_;
    int limit_;
    std::string transcript_;
};

/// Presents transformed inputs to the messages sent through it. The maps are
/// local: each player's map sees only that player's input.
class MappedChannel : public Channel {
public:
    using InputMap = std::function<BitString(const BitString&)>;

    MappedChannel(Channel& base, InputMap alice, InputMap bob)
        : base_(base), alice_(std::move(alice)), bob_(std::move(bob)) {}

    bool send(Player from, const MessageFn& message) override;

private:
    Channel& base_;
    InputMap alice_;
    InputMap bob_;
};

using Program = std::function<Output(Channel&)>;

struct ExplicitNode {
    bool leaf = true;
    Player owner = Player::Alice;
    std::vector<std::uint8_t> message;  // indexed by the owner's input bits
    int child[2] = {-1, -1};
    Output output;
};

/// A fully materialized protocol tree, unreachable branches included.
struct ExplicitTree {
    int input_bits = 0;
    std::vector<ExplicitNode> nodes;  // nodes[0] is the root

    int depth() const;
    std::size_t leaf_count() const;
    void validate() const;

    nlohmann::json to_json() const;
    static ExplicitTree from_json(const nlohmann::json& j);
};

inline constexpr std::uint64_t kDefaultNodeCap = 1ULL << 16;
inline constexpr int kMaxMaterializedInputBits = 12;

class ProtocolTree {
public:
    ProtocolTree(std::string name, int input_bits, int declared_cost, Program program);

    static ProtocolTree from_explicit(std::string name, ExplicitTree tree);
    static ProtocolTree constant(int input_bits, Output out);

    const std::string& name() const { return name_; }
    int input_bits() const { return input_bits_; }
    int cost() const { return cost_; }
    const Program& program() const { return program_; }

    /// Explores every transcript, including ones no input reaches.
    ExplicitTree materialize(std::uint64_t node_cap = kDefaultNodeCap) const;

private:
    std::string name_;
    int input_bits_;
    int cost_;
    Program program_;
};

/// Public-coin mixture of deterministic trees.
class RandomizedProtocol {
public:
    struct Branch {
        Rational probability;
        ProtocolTree tree;
    };

    explicit RandomizedProtocol(std::vector<Branch> branches);
    static RandomizedProtocol deterministic(ProtocolTree tree);

    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t size() const { return branches_.size(); }
    int input_bits() const { return branches_.front().tree.input_bits(); }
    int cost() const;

private:
    std::vector<Branch> branches_;
};

struct RunResult {
    Output output;
    int bits = 0;
    std::string transcript;
};

RunResult run_tree(const ProtocolTree& tree, const InputPair& inputs);
RunResult run_protocol(const RandomizedProtocol& p, const InputPair& inputs, std::size_t coin);

}  // namespace disjlab
