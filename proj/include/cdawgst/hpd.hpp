#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cdawgst/common.hpp"

namespace cdawgst {

class ByteWriter;
class ByteReader;

inline constexpr int kMaxChannels = 4;
// One value per weight channel; unused channels stay at zero.
using Values = std::array<std::int64_t, kMaxChannels>;

/// Path function f(P) = g(w1) o g(w2) o ... over an associative operator with
/// an identity and inverses. Only the two instances below can be serialized.
struct Telescoping {
    std::uint8_t id;
    std::int64_t (*g)(std::int64_t weight);
    std::int64_t (*combine)(std::int64_t, std::int64_t);
    std::int64_t (*inverse)(std::int64_t);
    std::int64_t identity;

    static const Telescoping sum;   // g(w) = w
    static const Telescoping unit;  // g(w) = 1, counts arcs
    static const Telescoping& by_id(std::uint8_t id);
};

struct DagArc {
    node_t target = kNoNode;
    Values weight{};
    std::int64_t payload = 0;
};

/// Ordered multigraph with one source and one sink. Nodes are plain indices.
class OrderedDag {
public:
    explicit OrderedDag(std::size_t nodes = 0) : out_(nodes) {}

    node_t add_node() {
        out_.emplace_back();
        return static_cast<node_t>(out_.size() - 1);
    }
    void add_arc(node_t from, node_t to, Values weight, std::int64_t payload = 0) {
        out_.at(from).push_back({to, weight, payload});
    }

    std::size_t node_count() const { return out_.size(); }
    std::size_t arc_count() const;
    std::span<const DagArc> out(node_t v) const { return out_[v]; }

    /// Source and sink, after checking for a single source, a single sink
    /// and no cycle. Throws std::invalid_argument otherwise.
    std::pair<node_t, node_t> endpoints() const;
    /// Nodes with every out-neighbor listed before them.
    std::vector<node_t> reverse_topological() const;

private:
    std::vector<std::vector<DagArc>> out_;
};

struct QueryStats {
    std::uint64_t probes = 0;       // level-ancestor and node probes
    std::uint64_t light_edges = 0;  // light arcs crossed during descents
    std::uint64_t descents = 0;
    std::uint64_t max_light_per_descent = 0;

    void merge(const QueryStats& o) {
        probes += o.probes;
        light_edges += o.light_edges;
        descents += o.descents;
        max_light_per_descent = std::max(max_light_per_descent, o.max_light_per_descent);
    }
};

enum class LaKind : std::uint8_t { binary_lifting = 0, path_ladder = 1 };

/// Level ancestor over a forest given by parent pointers and depths.
class LevelAncestor {
public:
    LevelAncestor() = default;
    LevelAncestor(std::span<const node_t> parent, std::span<const std::uint32_t> depth, LaKind kind);

    LaKind kind() const { return kind_; }
    /// Ancestor of u at depth d (d <= depth(u)).
    node_t query(node_t u, std::uint32_t d) const;
    /// Shallowest ancestor a of u with pred(a), for pred true at u and on
    /// every node between u and any ancestor where it holds. O(log n) calls.
    template <class Pred>
    node_t highest(node_t u, Pred&& pred, std::uint64_t* probes = nullptr) const;
    std::size_t words() const;

private:
    struct Lifting {
        std::vector<std::vector<node_t>> up;  // up[k][u] = 2^k-th ancestor
    };
    // Heavy-path decomposition of the tree itself: each path is an array
    // indexed by depth, so a query climbs O(log n) path heads.
    struct Ladder {
        std::vector<node_t> head;
        std::vector<std::uint32_t> path_of;
        std::vector<std::uint32_t> path_start;
        std::vector<node_t> path_nodes;
    };

    LaKind kind_ = LaKind::binary_lifting;
    std::vector<node_t> parent_;
    std::vector<std::uint32_t> depth_;
    std::variant<Lifting, Ladder> impl_;
};

template <class Pred>
node_t LevelAncestor::highest(node_t u, Pred&& pred, std::uint64_t* probes) const {
    auto probe = [&](node_t x) {
        if (probes) ++*probes;
        return pred(x);
    };
    if (const auto* l = std::get_if<Lifting>(&impl_)) {
        for (std::size_t k = l->up.size(); k-- > 0;) {
            const node_t y = l->up[k][u];
            if (y != u && probe(y)) u = y;
        }
        return u;
    }
    const auto& l = std::get<Ladder>(impl_);
    for (;;) {
        const node_t h = l.head[u];
        if (probe(h)) {
            const node_t p = parent_[h];
            if (p == kNoNode || !probe(p)) return h;
            u = p;
            continue;
        }
        // Binary search strictly below the head of u's path.
        const std::uint32_t base = l.path_start[l.path_of[u]];
        std::uint32_t lo = depth_[h] + 1, hi = depth_[u];
        while (lo < hi) {
            const std::uint32_t mid = lo + (hi - lo) / 2;
            if (probe(l.path_nodes[base + mid - depth_[h]])) hi = mid;
            else lo = mid + 1;
        }
        return l.path_nodes[base + lo - depth_[h]];
    }
}

/// Heavy path decomposition of the tree generated by an ordered DAG, answered
/// on the binary expansion G' without materializing the tree. Leaves are
/// numbered 1..N in depth-first order.
class HpdIndex {
public:
    struct Leaf {
        Values value{};            // f on the root-to-leaf path
        std::int64_t payload = 0;  // payload of the arc entering the sink
    };
    struct RangeLeaf {
        Values value{};
        Values join{};  // f at the lca with the previous leaf; unset for the first
        std::int64_t payload = 0;
    };
    struct NodeHit {
        node_t node = kNoNode;  // node of the input DAG
        Values value{};         // f from the root to it
        Interval leaves;        // its occurrence as a leaf interval
    };

    HpdIndex() = default;
    HpdIndex(const OrderedDag& dag, std::vector<Telescoping> channels, LaKind la = LaKind::binary_lifting);

    std::uint64_t leaf_count() const { return nleaves_.empty() ? 0 : nleaves_[root_]; }
    int channel_count() const { return static_cast<int>(fns_.size()); }
    node_t root() const { return real_[root_]; }
    node_t sink() const { return real_[sink_]; }
    std::size_t expanded_nodes() const { return left_.size(); }

    Leaf leaf_eval(std::uint64_t i, QueryStats* stats = nullptr) const;
    std::vector<RangeLeaf> range_eval(std::uint64_t i, std::uint64_t j, QueryStats* stats = nullptr) const;
    /// Node of G generating lca(u_i, u_j); never artificial.
    NodeHit lca_map(std::uint64_t i, std::uint64_t j, QueryStats* stats = nullptr) const;
    /// Highest ancestor of the node with leaf interval [i..j] whose value on
    /// `channel` is at least k. Throws std::domain_error "threshold
    /// unreachable" when the node itself stays below k, std::invalid_argument
    /// when [i..j] is not the interval of a node.
    NodeHit weighted_ancestor(std::uint64_t i, std::uint64_t j, std::int64_t k, int channel,
                              QueryStats* stats = nullptr) const;

    /// Light arcs on the longest root-to-leaf path of T(G'), by brute force
    /// over G'.
    std::uint64_t max_light_depth() const;

    void save(ByteWriter& w) const;
    static HpdIndex load(ByteReader& r, LaKind la = LaKind::binary_lifting);

    /// Compares everything except the level-ancestor structure.
    bool same_data(const HpdIndex& o) const;

private:
    enum Side : std::uint8_t { kLeft = 0, kRight = 1, kHeavyLeaf = 2 };
    struct Exit {
        node_t node;  // where the path leaves the heavy path of u
        Side side;
        std::uint64_t rank;  // rank inside the light child, 1-based
    };

    void finish();
    Values compose(const Values& a, const Values& b) const;
    Values value_at(node_t u, const Values& acc, node_t a) const;
    Values through(node_t a, Side side, const Values& at_a) const;
    Values identity() const;
    Exit find_exit(node_t u, std::uint64_t r, QueryStats* stats) const;
    std::uint64_t first_rank(node_t u, node_t a) const;
    NodeHit hit(node_t a, const Values& value, std::uint64_t lo) const;
    void check_leaf(std::uint64_t i) const;

    struct Emit;
    void emit_all(Emit& e, node_t c, const Values& acc, std::int64_t in_payload, std::optional<Values> join) const;
    void emit_from(Emit& e, node_t c, std::uint64_t r, const Values& acc, std::int64_t in_payload,
                   std::optional<Values> join) const;
    void emit_upto(Emit& e, node_t c, std::uint64_t r, const Values& acc, std::int64_t in_payload,
                   std::optional<Values> join) const;
    void emit_leaf(Emit& e, const Values& value, std::int64_t payload, std::optional<Values> join) const;
    // Nodes with a light right child on the heavy path from c whose
    // spanning-tree depth exceeds `floor`, listed bottom-up.
    std::vector<node_t> right_chain(node_t c, std::int64_t floor) const;

    std::vector<Telescoping> fns_;
    node_t root_ = kNoNode;
    node_t sink_ = kNoNode;
    // G': two children per internal node, with f-values and payloads on the
    // arcs. Artificial nodes follow the real ones.
    std::vector<node_t> left_, right_;
    std::vector<Values> left_f_, right_f_;
    std::vector<std::int64_t> left_payload_, right_payload_;
    std::vector<node_t> real_;
    std::vector<std::uint64_t> real_offset_;
    std::vector<std::uint64_t> nleaves_;
    std::vector<std::uint8_t> heavy_;  // kLeft or kRight
    // Spanning tree: parent is the heavy child; the sink is the root.
    std::vector<node_t> tparent_;
    std::vector<std::uint32_t> tdepth_;
    std::vector<Values> count_;  // f from the node along heavy arcs to the sink
    std::vector<std::uint64_t> lcnt_, rcnt_;
    std::vector<std::int64_t> heavy_payload_;
    std::vector<node_t> next_left_, next_right_;  // nearest node at or below with a light left/right child
    LevelAncestor la_;
};

}  // namespace cdawgst
