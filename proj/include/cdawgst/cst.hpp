#pragma once

#include <optional>
#include <vector>

#include "cdawgst/cdawg.hpp"
#include "cdawgst/hpd.hpp"
#include "cdawgst/revgram.hpp"
#include "cdawgst/text.hpp"

namespace cdawgst {

/// Suffix-tree node handle. `depth` is the string depth; [lo..hi] is the BWT
/// interval, zero in lite mode.
struct NodeId {
    node_t node = kNoNode;
    pos_t depth = 0;
    pos_t lo = 0;
    pos_t hi = 0;

    friend bool operator==(const NodeId&, const NodeId&) = default;
};

enum class HeightKind { string_depth, depth };

/// Compressed suffix tree over the CDAWG, the reversed grammar and two heavy
/// path indexes (forward: string depth and depth; reverse: rank offset and
/// text length with the character as payload).
class Cst {
public:
    Cst() = default;
    static Cst build(const Text& text, Mode mode = Mode::full, LaKind la = LaKind::binary_lifting);
    static Cst build(const OracleIndex& oracle, Mode mode = Mode::full, LaKind la = LaKind::binary_lifting);
    Cst(std::vector<std::uint8_t> alphabet, Cdawg g, RevGrammar rg, HpdIndex fwd, HpdIndex rev);

    Mode mode() const { return g_.mode(); }
    pos_t size() const { return g_.text_size(); }
    symbol_t sigma() const { return g_.sigma(); }
    const std::vector<std::uint8_t>& alphabet() const { return alphabet_; }
    const Cdawg& cdawg() const { return g_; }
    const RevGrammar& grammar() const { return rg_; }
    const HpdIndex& forward_hpd() const { return fwd_; }
    const HpdIndex& reverse_hpd() const { return rev_; }

    // Table 1 -------------------------------------------------------------
    NodeId root() const;
    NodeId select_leaf(pos_t i, QueryStats* stats = nullptr) const;
    NodeId leftmost_leaf(const NodeId& id) const;
    NodeId rightmost_leaf(const NodeId& id) const;
    NodeId lca(pos_t i, pos_t j, QueryStats* stats = nullptr) const;
    NodeId lca(const NodeId& a, const NodeId& b, QueryStats* stats = nullptr) const;
    pos_t sa(pos_t i, QueryStats* stats = nullptr) const;
    std::vector<pos_t> sa(pos_t i, pos_t j, QueryStats* stats = nullptr) const;
    pos_t isa(pos_t i, QueryStats* stats = nullptr) const;
    std::vector<pos_t> isa(pos_t i, pos_t j, QueryStats* stats = nullptr) const;
    pos_t lcp(pos_t i, QueryStats* stats = nullptr) const;
    std::vector<pos_t> lcp(pos_t i, pos_t j, QueryStats* stats = nullptr) const;
    pos_t plcp(pos_t i, QueryStats* stats = nullptr) const;
    std::vector<pos_t> plcp(pos_t i, pos_t j, QueryStats* stats = nullptr) const;
    symbol_t text(pos_t i, QueryStats* stats = nullptr) const;
    std::vector<symbol_t> extract(pos_t i, pos_t j, QueryStats* stats = nullptr) const;
    pos_t depth(const NodeId& id, QueryStats* stats = nullptr) const;
    /// Highest ancestor with depth (respectively string depth) at least d.
    /// Throws std::domain_error "threshold unreachable" past the node.
    NodeId ancestor(const NodeId& id, pos_t d, QueryStats* stats = nullptr) const;
    NodeId str_ancestor(const NodeId& id, pos_t d, QueryStats* stats = nullptr) const;

    // Table 2 -------------------------------------------------------------
    pos_t string_depth(const NodeId& id) const;
    pos_t n_leaves(const NodeId& id) const;
    pos_t height(const NodeId& id, HeightKind kind = HeightKind::string_depth) const;
    bool is_leaf(const NodeId& id) const { return id.node == g_.sink(); }
    /// Text position of a leaf.
    pos_t locate_leaf(const NodeId& id) const;
    pos_t leaf_rank(const NodeId& id, QueryStats* stats = nullptr) const;
    bool is_ancestor(const NodeId& a, const NodeId& b) const;
    std::optional<NodeId> parent(const NodeId& id) const;
    std::optional<NodeId> first_child(const NodeId& id) const;
    std::optional<NodeId> child(const NodeId& id, symbol_t c) const;
    std::optional<NodeId> next_sibling(const NodeId& id) const;
    std::optional<NodeId> suffix_link(const NodeId& id) const;
    /// Full mode only.
    std::optional<NodeId> weiner_link(const NodeId& id, symbol_t c) const;

    // Extensions ----------------------------------------------------------
    pos_t lce(pos_t p, pos_t q, QueryStats* stats = nullptr) const;
    /// Sorted occurrences of T[i..j].
    std::vector<pos_t> internal_pattern_match(pos_t i, pos_t j) const;
    /// k-th character of the node label, 1 <= k <= string depth.
    symbol_t letter(const NodeId& id, pos_t k) const;
    NodeId deepest_node_by_depth(const NodeId& id) const;
    NodeId deepest_node_by_string_depth(const NodeId& id) const;
    NodeId suffix_link_iter(const NodeId& id, pos_t i) const;

    /// BWT interval of a node; computed through the ISA in lite mode.
    Interval interval(const NodeId& id, QueryStats* stats = nullptr) const;
    /// Throws std::invalid_argument unless `id` names a suffix-tree node.
    void check(const NodeId& id) const;
    /// Class member offset of the node (0 for the longest string).
    pos_t member_offset(const NodeId& id) const;

private:
    NodeId make(node_t v, pos_t depth, pos_t lo) const;
    NodeId from_hit(const HpdIndex::NodeHit& h) const;
    // Text position of the leftmost leaf below the node.
    pos_t leftmost_position(const NodeId& id) const;
    void check_pos(pos_t i) const;
    void check_range(pos_t i, pos_t j) const;

    std::vector<std::uint8_t> alphabet_;
    Cdawg g_;
    RevGrammar rg_;
    HpdIndex fwd_;
    HpdIndex rev_;
};

/// Forward CDAWG as an ordered DAG: channel 0 = label length, channel 1 =
/// arc count.
OrderedDag forward_dag(const Cdawg& g);

}  // namespace cdawgst
