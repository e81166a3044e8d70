#include "disjlab/protocol.hpp"

#include "disjlab/errors.hpp"

#include <algorithm>
#include <memory>

namespace disjlab {

namespace {

/// Thrown by the exploring channel once the forced prefix is used up.
struct Branching {
    Player owner;
    std::vector<std::uint8_t> table;
};

class ExploreChannel : public Channel {
public:
    ExploreChannel(const std::string& path, int input_bits) : path_(path), input_bits_(input_bits) {}

    bool send(Player from, const MessageFn& message) override {
        if (pos_ < path_.size()) return path_[pos_++] == '1';
        Branching b{from, {}};
        const std::uint64_t count = 1ULL << input_bits_;
        b.table.resize(count);
        for (std::uint64_t v = 0; v < count; ++v) b.table[v] = message(BitString(v, input_bits_)) ? 1 : 0;
        throw b;
    }

private:
    const std::string& path_;
    std::size_t pos_ = 0;
    int input_bits_;
};

nlohmann::json node_json(const ExplicitTree& t, int index) {
    const ExplicitNode& node = t.nodes[static_cast<std::size_t>(index)];
    if (node.leaf) return {{"output", node.output.to_json()}};
    std::string table;
    table.reserve(node.message.size());
    for (auto b : node.message) table.push_back(b ? '1' : '0');
    return {{"owner", std::string(to_string(node.owner))},
            {"message", table},
            {"children", {node_json(t, node.child[0]), node_json(t, node.child[1])}}};
}

int node_from_json(ExplicitTree& t, const nlohmann::json& j, int depth) {
    if (depth > 64) throw Error(ErrorKind::MalformedTree, "tree deeper than 64");
    const int index = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    if (j.contains("output")) {
        t.nodes[static_cast<std::size_t>(index)].output = Output::from_json(j.at("output"));
        return index;
    }
    if (!j.contains("owner") || !j.contains("message") || !j.contains("children") || j.at("children").size() != 2) {
        throw Error(ErrorKind::MalformedTree, "internal nodes need owner, message and two children");
    }
    ExplicitNode node;
    node.leaf = false;
    const std::string owner = j.at("owner").get<std::string>();
    if (owner == "alice") {
        node.owner = Player::Alice;
    } else if (owner == "bob") {
        node.owner = Player::Bob;
    } else {
        throw Error(ErrorKind::MalformedTree, "owner must be alice or bob");
    }
    const std::string table = j.at("message").get<std::string>();
    if (table.size() != (1ULL << t.input_bits) || table.find_first_not_of("01") != std::string::npos) {
        throw Error(ErrorKind::MalformedTree, "message table needs 2^input_bits characters in {0,1}");
    }
    for (char c : table) node.message.push_back(c == '1' ? 1 : 0);
    node.child[0] = node_from_json(t, j.at("children")[0], depth + 1);
    node.child[1] = node_from_json(t, j.at("children")[1], depth + 1);
    t.nodes[static_cast<std::size_t>(index)] = std::move(node);
    return index;
}

}  // namespace

std::string_view to_string(Player p) { return p == Player::Alice ? "alice" : "bob"; }

std::string Output::str() const {
    if (reject) return "reject";
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
    return s + "]";
}

nlohmann::json Output::to_json() const { return {{"reject", reject}, {"values", values}}; }

Output Output::from_json(const nlohmann::json& j) {
    Output o;
    o.reject = j.value("reject", false);
    if (j.contains("values")) o.values = j.at("values").get<std::vector<int>>();
    return o;
}

bool ExecChannel::send(Player from, const MessageFn& message) {
    if (bits() >= limit_) {
        throw Error(ErrorKind::MalformedTree, "protocol sent more than its declared " + std::to_string(limit_) + " bits");
    }
    const bool bit = message(from == Player::Alice ? inputs_.x : inputs_.y);
    transcript_.push_back(bit ? '1' : '0');
    return bit;
}

bool MappedChannel::send(Player from, const MessageFn& message) {
    const InputMap& map = from == Player::Alice ? alice_ : bob_;
    return base_.send(from, [&](const BitString& in) { return message(map(in)); });
}

int ExplicitTree::depth() const {
    std::vector<int> d(nodes.size(), 0);
    int best = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        best = std::max(best, d[i]);
        if (nodes[i].leaf) continue;
        for (int c : nodes[i].child) d[static_cast<std::size_t>(c)] = d[i] + 1;
    }
    return best;
}

std::size_t ExplicitTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const ExplicitNode& n) { return n.leaf; }));
}

void ExplicitTree::validate() const {
    if (nodes.empty()) throw Error(ErrorKind::MalformedTree, "tree has no nodes");
    if (input_bits < 0 || input_bits > kMaxMaterializedInputBits) throw Error(ErrorKind::MalformedTree, "input size out of range");
    std::vector<int> parents(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const ExplicitNode& n = nodes[i];
        if (n.leaf) continue;
        if (n.message.size() != (1ULL << input_bits)) throw Error(ErrorKind::MalformedTree, "message table has the wrong size");
        for (int c : n.child) {
            if (c <= static_cast<int>(i) || c >= static_cast<int>(nodes.size())) {
                throw Error(ErrorKind::MalformedTree, "child index must point forward inside the tree");
            }
            ++parents[static_cast<std::size_t>(c)];
        }
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (parents[i] != 1) throw Error(ErrorKind::MalformedTree, "every non-root node needs exactly one parent");
    }
}

nlohmann::json ExplicitTree::to_json() const {
    return {{"format", "disjlab-protocol-tree"}, {"input_bits", input_bits}, {"root", node_json(*this, 0)}};
}

ExplicitTree ExplicitTree::from_json(const nlohmann::json& j) {
    try {
        ExplicitTree t;
        t.input_bits = j.at("input_bits").get<int>();
        if (t.input_bits < 0 || t.input_bits > kMaxMaterializedInputBits) {
            throw Error(ErrorKind::MalformedTree, "input size out of range");
        }
        node_from_json(t, j.at("root"), 0);
        t.validate();
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("protocol json: ") + e.what());
    }
}

ProtocolTree::ProtocolTree(std::string name, int input_bits, int declared_cost, Program program)
    : name_(std::move(name)), input_bits_(input_bits), cost_(declared_cost), program_(std::move(program)) {
    if (input_bits < 0 || input_bits > kMaxUniverse) throw Error(ErrorKind::Range, "input size out of range");
    if (declared_cost < 0) throw Error(ErrorKind::Range, "declared cost must be nonnegative");
}

ProtocolTree ProtocolTree::from_explicit(std::string name, ExplicitTree tree) {
    tree.validate();
    const int bits = tree.input_bits;
    const int cost = tree.depth();
    auto shared = std::make_shared<const ExplicitTree>(std::move(tree));
    return ProtocolTree(std::move(name), bits, cost, [shared](Channel& ch) {
        int at = 0;
        while (!shared->nodes[static_cast<std::size_t>(at)].leaf) {
            const ExplicitNode& node = shared->nodes[static_cast<std::size_t>(at)];
            const bool bit = ch.send(node.owner, [&node](const BitString& in) { return node.message[in.bits] != 0; });
            at = node.child[bit ? 1 : 0];
        }
        return shared->nodes[static_cast<std::size_t>(at)].output;
    });
}

ProtocolTree ProtocolTree::constant(int input_bits, Output out) {
    return ProtocolTree("constant" + out.str(), input_bits, 0, [out](Channel&) { return out; });
}

ExplicitTree ProtocolTree::materialize(std::uint64_t node_cap) const {
    if (input_bits_ > kMaxMaterializedInputBits) {
        throw Error(ErrorKind::CapExceeded, "materializing needs input_bits <= " + std::to_string(kMaxMaterializedInputBits));
    }
    ExplicitTree t;
    t.input_bits = input_bits_;
    struct Work {
        std::string path;
        int index;
    };
    std::vector<Work> stack{{"", 0}};
    t.nodes.emplace_back();
    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(w.path.size()) > cost_) {
            throw Error(ErrorKind::MalformedTree, "a transcript is longer than the declared cost " + std::to_string(cost_));
        }
        ExploreChannel ch(w.path, input_bits_);
        try {
            t.nodes[static_cast<std::size_t>(w.index)].output = program_(ch);
        } catch (Branching& b) {
            if (t.nodes.size() + 2 > node_cap) throw Error(ErrorKind::CapExceeded, "tree exceeds the node cap");
            ExplicitNode& node = t.nodes[static_cast<std::size_t>(w.index)];
            node.leaf = false;
            node.owner = b.owner;
            node.message = std::move(b.table);
            const int zero = static_cast<int>(t.nodes.size());
            t.nodes.emplace_back();
            t.nodes.emplace_back();
            t.nodes[static_cast<std::size_t>(w.index)].child[0] = zero;
            t.nodes[static_cast<std::size_t>(w.index)].child[1] = zero + 1;
            stack.push_back({w.path + '1', zero + 1});
            stack.push_back({w.path + '0', zero});
        }
    }
    return t;
}

RandomizedProtocol::RandomizedProtocol(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw Error(ErrorKind::Parameter, "a randomized protocol needs at least one tree");
    Rational total = 0;
    for (const auto& b : branches_) {
        if (b.probability <= 0) throw Error(ErrorKind::Parameter, "coin probabilities must be positive");
        if (b.tree.input_bits() != branches_.front().tree.input_bits()) {
            throw Error(ErrorKind::DimensionMismatch, "trees disagree on the input size");
        }
        total += b.probability;
    }
    if (total != 1) throw Error(ErrorKind::Parameter, "coin probabilities sum to " + to_string(total) + ", not 1");
}

RandomizedProtocol RandomizedProtocol::deterministic(ProtocolTree tree) {
    return RandomizedProtocol({{Rational(1), std::move(tree)}});
}

int RandomizedProtocol::cost() const {
    int c = 0;
    for (const auto& b : branches_) c = std::max(c, b.tree.cost());
    return c;
}

RunResult run_tree(const ProtocolTree& tree, const InputPair& inputs) {
    if (inputs.n() != tree.input_bits()) {
        throw Error(ErrorKind::DimensionMismatch, "protocol takes " + std::to_string(tree.input_bits()) + "-bit inputs");
    }
    ExecChannel ch(inputs, tree.cost());
    RunResult r;
    r.output = tree.program()(ch);
    r.bits = ch.bits();
    r.transcript = ch.transcript();
    return r;
}

RunResult run_protocol(const RandomizedProtocol& p, const InputPair& inputs, std::size_t coin) {
    if (coin >= p.size()) throw Error(ErrorKind::Range, "coin index out of range");
    return run_tree(p.branches()[coin].tree, inputs);
}

}  // namespace disjlab
