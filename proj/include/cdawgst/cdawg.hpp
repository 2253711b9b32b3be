#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdawgst/common.hpp"
#include "cdawgst/rlbwt.hpp"
#include "cdawgst/text.hpp"

namespace cdawgst {

struct CdawgArc {
    node_t target = kNoNode;
    symbol_t ch = 0;    // first character of the arc label
    pos_t right = 0;    // label length
    pos_t weight = 0;   // sp(child) - sp(parent) of every suffix-tree edge it generates

    friend bool operator==(const CdawgArc&, const CdawgArc&) = default;
};

/// One block of the partition of a node's class induced by an in-neighbor:
/// members offset+1 .. offset+size(source) have their parent in `source`,
/// reached through out-arc `arc` (a global arc index).
struct InNeighbor {
    pos_t offset = 0;
    node_t source = kNoNode;
    std::uint32_t arc = 0;

    friend bool operator==(const InNeighbor&, const InNeighbor&) = default;
};

/// Weiner link from the longest member of a class. Shorter members only
/// extend inside their own class.
struct WeinerArc {
    symbol_t ch = 0;
    node_t target = kNoNode;
    pos_t target_depth = 0;  // string depth of the locus of cW
    bool is_explicit = false;

    friend bool operator==(const WeinerArc&, const WeinerArc&) = default;
};

/// First leaf of largest depth below the longest member, relative to it.
struct DeepestLeaf {
    pos_t offset = 0;        // leaf rank minus the node's first rank
    pos_t string_depth = 0;  // added string depth
    pos_t depth = 0;         // added edges

    friend bool operator==(const DeepestLeaf&, const DeepestLeaf&) = default;
};

struct CdawgNode {
    pos_t length = 0;   // |l(v)|, the longest member
    pos_t size = 0;     // number of right-maximal members (suffixes for the sink)
    pos_t first = 0;    // BWT interval of l(v); zero in lite mode
    pos_t last = 0;
    pos_t nleaves = 0;  // common interval width of the class
    pos_t left = 0;     // string length from l(v) to its leftmost leaf
    pos_t right_len = 0;
    pos_t height_string = 0;
    pos_t height_depth = 0;
    DeepestLeaf deepest_by_depth;
    DeepestLeaf deepest_by_string;
    node_t slink = kNoNode;  // class of the suffix link of the shortest member
    std::uint32_t arc_begin = 0, arc_end = 0;
    std::uint32_t in_begin = 0, in_end = 0;
    std::uint32_t weiner_begin = 0, weiner_end = 0;

    pos_t shortest() const { return length - size + 1; }

    friend bool operator==(const CdawgNode&, const CdawgNode&) = default;
};

/// CDAWG of T obtained by minimizing the explicit suffix tree, annotated for
/// suffix-tree navigation. Node 0 is the source, the last node is the sink.
class Cdawg {
public:
    Cdawg() = default;

    static Cdawg build(const OracleIndex& oracle, Mode mode = Mode::full);

    Mode mode() const { return mode_; }
    pos_t text_size() const { return n_; }
    symbol_t sigma() const { return sigma_; }

    node_t source() const { return 0; }
    node_t sink() const { return static_cast<node_t>(nodes_.size() - 1); }
    std::size_t node_count() const { return nodes_.size(); }
    /// e_T
    std::size_t arc_count() const { return arcs_.size(); }

    const CdawgNode& node(node_t v) const { return nodes_[v]; }
    const CdawgArc& arc(std::uint32_t a) const { return arcs_[a]; }
    std::span<const CdawgArc> out_arcs(node_t v) const;
    std::span<const InNeighbor> in_neighbors(node_t v) const;
    std::span<const WeinerArc> weiner_arcs(node_t v) const;

    /// Global index of the out-arc of v starting with c.
    std::optional<std::uint32_t> find_arc(node_t v, symbol_t c) const;
    /// Block of the in-neighbor partition containing member offset `o`
    /// (0 = longest member).
    const InNeighbor& in_neighbor_at(node_t v, pos_t o) const;
    const WeinerArc* find_weiner(node_t v, symbol_t c) const;

    /// C[c] = number of symbols smaller than c, size sigma + 2.
    const std::vector<pos_t>& C() const { return C_; }
    const Rlbwt& rlbwt() const;
    bool has_rlbwt() const { return rlbwt_.has_value(); }

    void save(ByteWriter& w) const;
    static Cdawg load(ByteReader& r);
    void save_rlbwt(ByteWriter& w) const { rlbwt().save(w); }
    void attach_rlbwt(Rlbwt r);

    friend bool operator==(const Cdawg&, const Cdawg&) = default;

private:
    Mode mode_ = Mode::full;
    pos_t n_ = 0;
    symbol_t sigma_ = 0;
    std::vector<CdawgNode> nodes_;
    std::vector<CdawgArc> arcs_;
    std::vector<InNeighbor> in_;
    std::vector<WeinerArc> weiner_;
    std::vector<pos_t> C_;
    std::optional<Rlbwt> rlbwt_;
};

/// Interval of cW from the interval of W, or nullopt when cW does not occur.
std::optional<Interval> extend_left(const Rlbwt& bwt, std::span<const pos_t> C, Interval iv, symbol_t c);
/// Interval of W and the character c from the interval of cW, W right-maximal.
std::pair<Interval, symbol_t> contract_left(const Rlbwt& bwt, std::span<const pos_t> C, Interval iv);

struct ClassCheck {
    bool ok = true;
    int property = 0;  // first violated sub-property, 0 when ok
    std::string detail;
};

/// Checks the BWT properties of one equivalence class against the oracle:
/// equal widths (1), unary/non-unary runs (2), left extension (3), left
/// contraction (4) and identical child offsets (5). Full mode only.
ClassCheck check_equivalence_class(const Cdawg& g, const OracleIndex& oracle, node_t v);

}  // namespace cdawgst
