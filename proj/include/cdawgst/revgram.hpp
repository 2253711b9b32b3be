#pragma once

#include <span>
#include <vector>

#include "cdawgst/cdawg.hpp"
#include "cdawgst/hpd.hpp"

namespace cdawgst {

struct GrammarArc {
    node_t target = kNoNode;
    pos_t weight = 0;   // BWT offset, summed over collapsed arcs
    pos_t ext_len = 0;  // text characters covered
    symbol_t ch = 0;    // first character of the suffix, meaningful on arcs into the sink

    friend bool operator==(const GrammarArc&, const GrammarArc&) = default;
};

/// Reversed CDAWG with nodes of out-degree one collapsed. Node 0 is the root
/// (the CDAWG sink), the last node the sink (the CDAWG source). Out-arcs are
/// ordered by the in-neighbor offset in the CDAWG, so the i-th leaf of the
/// generated tree is the suffix T[i..n].
class RevGrammar {
public:
    RevGrammar() = default;
    static RevGrammar build(const Cdawg& g);

    node_t root() const { return 0; }
    node_t sink() const { return static_cast<node_t>(begin_.size() - 2); }
    std::size_t node_count() const { return begin_.size() - 1; }
    /// Number of arcs, the size of the grammar.
    std::size_t grammar_size() const { return arcs_.size(); }
    std::span<const GrammarArc> out(node_t v) const {
        return std::span(arcs_).subspan(begin_[v], begin_[v + 1] - begin_[v]);
    }
    /// CDAWG node each grammar node came from.
    node_t cdawg_node(node_t v) const { return origin_[v]; }

    /// T, by walking every root-to-sink path in order.
    std::vector<symbol_t> expand() const;
    /// ISA[i] - 1 for every i, by the same walk.
    std::vector<pos_t> path_weight_sums() const;
    /// True when all arcs entering each node carry distinct weights.
    bool distinct_in_weights() const;

    /// Channels: 0 = weight, 1 = text length; payload = character.
    OrderedDag to_dag() const;

    void save(ByteWriter& w) const;
    static RevGrammar load(ByteReader& r);

    friend bool operator==(const RevGrammar&, const RevGrammar&) = default;

private:
    template <class Visit>
    void walk(Visit&& visit) const;

    std::vector<std::uint32_t> begin_;  // CSR offsets, node_count() + 1 entries
    std::vector<GrammarArc> arcs_;
    std::vector<node_t> origin_;
};

}  // namespace cdawgst
