#include "cdawgst/cst.hpp"

#include <algorithm>

namespace cdawgst {

OrderedDag forward_dag(const Cdawg& g) {
    OrderedDag d(g.node_count());
    for (node_t v = 0; v < g.node_count(); ++v)
        for (const auto& a : g.out_arcs(v))
            d.add_arc(v, a.target, Values{static_cast<std::int64_t>(a.right), 1, 0, 0});
    return d;
}

Cst::Cst(std::vector<std::uint8_t> alphabet, Cdawg g, RevGrammar rg, HpdIndex fwd, HpdIndex rev)
    : alphabet_(std::move(alphabet)), g_(std::move(g)), rg_(std::move(rg)), fwd_(std::move(fwd)),
      rev_(std::move(rev)) {
    if (fwd_.leaf_count() != g_.text_size() || rev_.leaf_count() != g_.text_size())
        throw format_error("index parts disagree on the text length");
    if (alphabet_.size() != g_.sigma()) throw format_error("alphabet does not match sigma");
}

Cst Cst::build(const OracleIndex& oracle, Mode mode, LaKind la) {
    Cdawg g = Cdawg::build(oracle, mode);
    RevGrammar rg = RevGrammar::build(g);
    HpdIndex fwd(forward_dag(g), {Telescoping::sum, Telescoping::unit}, la);
    HpdIndex rev(rg.to_dag(), {Telescoping::sum, Telescoping::sum}, la);
    return Cst(oracle.text().alphabet(), std::move(g), std::move(rg), std::move(fwd), std::move(rev));
}

Cst Cst::build(const Text& text, Mode mode, LaKind la) { return build(OracleIndex(text), mode, la); }

// ---------------------------------------------------------------------------

void Cst::check_pos(pos_t i) const {
    if (i < 1 || i > size()) throw std::out_of_range("position out of range");
}

void Cst::check_range(pos_t i, pos_t j) const {
    check_pos(i);
    check_pos(j);
    if (i > j) throw std::invalid_argument("empty range");
}

void Cst::check(const NodeId& id) const {
    if (id.node >= g_.node_count()) throw std::invalid_argument("no such cdawg node");
    const auto& nd = g_.node(id.node);
    const pos_t lowest = id.node == g_.sink() ? 1 : nd.shortest();
    if (id.depth < lowest || id.depth > nd.length) throw std::invalid_argument("depth outside the node's class");
    if (mode() == Mode::full) {
        if (id.lo < 1 || id.hi > size() || id.hi < id.lo || id.hi - id.lo + 1 != nd.nleaves)
            throw std::invalid_argument("interval does not match the node");
    } else if (id.lo != 0 || id.hi != 0) {
        throw std::invalid_argument("lite identifiers carry no interval");
    }
}

pos_t Cst::member_offset(const NodeId& id) const { return g_.node(id.node).length - id.depth; }

NodeId Cst::make(node_t v, pos_t depth, pos_t lo) const {
    if (mode() == Mode::lite) return {v, depth, 0, 0};
    return {v, depth, lo, lo + g_.node(v).nleaves - 1};
}

NodeId Cst::from_hit(const HpdIndex::NodeHit& h) const {
    return make(h.node, static_cast<pos_t>(h.value[0]), h.leaves.lo);
}

pos_t Cst::leftmost_position(const NodeId& id) const {
    const pos_t left = id.node == g_.sink() ? 0 : g_.node(id.node).left;
    return size() - (id.depth + left) + 1;
}

Interval Cst::interval(const NodeId& id, QueryStats* stats) const {
    if (mode() == Mode::full) return {id.lo, id.hi};
    const pos_t lo = isa(leftmost_position(id), stats);
    return {lo, lo + g_.node(id.node).nleaves - 1};
}

// ---------------------------------------------------------------------------

NodeId Cst::root() const { return make(g_.source(), 0, 1); }

NodeId Cst::select_leaf(pos_t i, QueryStats* stats) const {
    check_pos(i);
    return make(g_.sink(), static_cast<pos_t>(fwd_.leaf_eval(i, stats).value[0]), i);
}

NodeId Cst::leftmost_leaf(const NodeId& id) const {
    check(id);
    if (is_leaf(id)) return id;
    return make(g_.sink(), id.depth + g_.node(id.node).left, id.lo);
}

NodeId Cst::rightmost_leaf(const NodeId& id) const {
    check(id);
    if (is_leaf(id)) return id;
    return make(g_.sink(), id.depth + g_.node(id.node).right_len, id.hi);
}

NodeId Cst::lca(pos_t i, pos_t j, QueryStats* stats) const {
    check_pos(i);
    check_pos(j);
    if (i > j) std::swap(i, j);
    return from_hit(fwd_.lca_map(i, j, stats));
}

NodeId Cst::lca(const NodeId& a, const NodeId& b, QueryStats* stats) const {
    check(a);
    check(b);
    Interval ia = interval(a, stats), ib = interval(b, stats);
    return lca(std::min(ia.lo, ib.lo), std::max(ia.hi, ib.hi), stats);
}

pos_t Cst::sa(pos_t i, QueryStats* stats) const {
    check_pos(i);
    return size() - static_cast<pos_t>(fwd_.leaf_eval(i, stats).value[0]) + 1;
}

std::vector<pos_t> Cst::sa(pos_t i, pos_t j, QueryStats* stats) const {
    check_range(i, j);
    std::vector<pos_t> out;
    out.reserve(j - i + 1);
    for (const auto& leaf : fwd_.range_eval(i, j, stats)) out.push_back(size() - static_cast<pos_t>(leaf.value[0]) + 1);
    return out;
}

pos_t Cst::isa(pos_t i, QueryStats* stats) const {
    check_pos(i);
    return static_cast<pos_t>(rev_.leaf_eval(i, stats).value[0]) + 1;
}

std::vector<pos_t> Cst::isa(pos_t i, pos_t j, QueryStats* stats) const {
    check_range(i, j);
    std::vector<pos_t> out;
    out.reserve(j - i + 1);
    for (const auto& leaf : rev_.range_eval(i, j, stats)) out.push_back(static_cast<pos_t>(leaf.value[0]) + 1);
    return out;
}

pos_t Cst::lcp(pos_t i, QueryStats* stats) const {
    check_pos(i);
    if (i == 1) return 0;
    return static_cast<pos_t>(fwd_.lca_map(i - 1, i, stats).value[0]);
}

std::vector<pos_t> Cst::lcp(pos_t i, pos_t j, QueryStats* stats) const {
    check_range(i, j);
    std::vector<pos_t> out;
    out.reserve(j - i + 1);
    if (i == 1) out.push_back(0);
    if (j == 1) return out;
    const pos_t from = i == 1 ? 1 : i - 1;
    auto leaves = fwd_.range_eval(from, j, stats);
    for (std::size_t k = 1; k < leaves.size(); ++k) out.push_back(static_cast<pos_t>(leaves[k].join[0]));
    return out;
}

pos_t Cst::plcp(pos_t i, QueryStats* stats) const { return lcp(isa(i, stats), stats); }

std::vector<pos_t> Cst::plcp(pos_t i, pos_t j, QueryStats* stats) const {
    std::vector<pos_t> out = isa(i, j, stats);
    for (auto& x : out) x = lcp(x, stats);
    return out;
}

symbol_t Cst::text(pos_t i, QueryStats* stats) const {
    check_pos(i);
    return static_cast<symbol_t>(rev_.leaf_eval(i, stats).payload);
}

std::vector<symbol_t> Cst::extract(pos_t i, pos_t j, QueryStats* stats) const {
    check_range(i, j);
    std::vector<symbol_t> out;
    out.reserve(j - i + 1);
    for (const auto& leaf : rev_.range_eval(i, j, stats)) out.push_back(static_cast<symbol_t>(leaf.payload));
    return out;
}

pos_t Cst::depth(const NodeId& id, QueryStats* stats) const {
    check(id);
    Interval iv = interval(id, stats);
    return static_cast<pos_t>(fwd_.lca_map(iv.lo, iv.hi, stats).value[1]);
}

NodeId Cst::ancestor(const NodeId& id, pos_t d, QueryStats* stats) const {
    check(id);
    Interval iv = interval(id, stats);
    return from_hit(fwd_.weighted_ancestor(iv.lo, iv.hi, static_cast<std::int64_t>(d), 1, stats));
}

NodeId Cst::str_ancestor(const NodeId& id, pos_t d, QueryStats* stats) const {
    check(id);
    Interval iv = interval(id, stats);
    return from_hit(fwd_.weighted_ancestor(iv.lo, iv.hi, static_cast<std::int64_t>(d), 0, stats));
}

// ---------------------------------------------------------------------------

pos_t Cst::string_depth(const NodeId& id) const {
    check(id);
    return id.depth;
}

pos_t Cst::n_leaves(const NodeId& id) const {
    check(id);
    return g_.node(id.node).nleaves;
}

pos_t Cst::height(const NodeId& id, HeightKind kind) const {
    check(id);
    const auto& nd = g_.node(id.node);
    return kind == HeightKind::string_depth ? nd.height_string : nd.height_depth;
}

pos_t Cst::locate_leaf(const NodeId& id) const {
    check(id);
    if (!is_leaf(id)) throw std::invalid_argument("not a leaf");
    return size() - id.depth + 1;
}

pos_t Cst::leaf_rank(const NodeId& id, QueryStats* stats) const {
    const pos_t pos = locate_leaf(id);
    return mode() == Mode::full ? id.lo : isa(pos, stats);
}

bool Cst::is_ancestor(const NodeId& a, const NodeId& b) const {
    check(a);
    check(b);
    Interval ia = interval(a), ib = interval(b);
    return ia.lo <= ib.lo && ib.hi <= ia.hi && a.depth <= b.depth;
}

std::optional<NodeId> Cst::parent(const NodeId& id) const {
    check(id);
    if (id.node == g_.source()) return std::nullopt;
    const auto& b = g_.in_neighbor_at(id.node, member_offset(id));
    const auto& arc = g_.arc(b.arc);
    return make(b.source, id.depth - arc.right, id.lo - arc.weight);
}

std::optional<NodeId> Cst::first_child(const NodeId& id) const {
    check(id);
    if (is_leaf(id)) return std::nullopt;
    const auto& arc = g_.out_arcs(id.node).front();
    return make(arc.target, id.depth + arc.right, id.lo + arc.weight);
}

std::optional<NodeId> Cst::child(const NodeId& id, symbol_t c) const {
    check(id);
    if (c > sigma()) throw std::invalid_argument("symbol out of range");
    auto a = g_.find_arc(id.node, c);
    if (!a) return std::nullopt;
    const auto& arc = g_.arc(*a);
    return make(arc.target, id.depth + arc.right, id.lo + arc.weight);
}

std::optional<NodeId> Cst::next_sibling(const NodeId& id) const {
    check(id);
    if (id.node == g_.source()) return std::nullopt;
    const auto& b = g_.in_neighbor_at(id.node, member_offset(id));
    if (b.arc + 1 >= g_.node(b.source).arc_end) return std::nullopt;
    const auto& arc = g_.arc(b.arc);
    const auto& next = g_.arc(b.arc + 1);
    const pos_t parent_depth = id.depth - arc.right;
    return make(next.target, parent_depth + next.right, id.lo - arc.weight + next.weight);
}

std::optional<NodeId> Cst::suffix_link(const NodeId& id) const {
    check(id);
    if (id.node == g_.source()) return std::nullopt;
    if (id.depth == 1) return root();
    const auto& nd = g_.node(id.node);
    const bool full = mode() == Mode::full;
    if (id.node == g_.sink() || member_offset(id) + 1 < nd.size) {
        // The next shorter string is in the same class.
        pos_t lo = full ? contract_left(g_.rlbwt(), g_.C(), {id.lo, id.hi}).first.lo : 0;
        return make(id.node, id.depth - 1, lo);
    }
    const node_t x = nd.slink;
    if (!full) return make(x, id.depth - 1, 0);
    const pos_t pos = size() - (id.depth - 1 + g_.node(x).left) + 1;
    return make(x, id.depth - 1, isa(pos));
}

std::optional<NodeId> Cst::weiner_link(const NodeId& id, symbol_t c) const {
    check(id);
    if (mode() != Mode::full) throw unsupported_error("weinerLink needs the full representation");
    if (c > sigma()) throw std::invalid_argument("symbol out of range");
    const auto& bwt = g_.rlbwt();
    if (member_offset(id) > 0) {
        // Not left-maximal: only the class predecessor extends it.
        if (bwt.access(id.lo) != c) return std::nullopt;
        auto iv = extend_left(bwt, g_.C(), {id.lo, id.hi}, c);
        return make(id.node, id.depth + 1, iv->lo);
    }
    if (id.node == g_.sink()) return std::nullopt;
    const WeinerArc* w = g_.find_weiner(id.node, c);
    if (!w) return std::nullopt;
    auto iv = extend_left(bwt, g_.C(), {id.lo, id.hi}, c);
    return NodeId{w->target, w->target_depth, iv->lo, iv->hi};
}

// ---------------------------------------------------------------------------

pos_t Cst::lce(pos_t p, pos_t q, QueryStats* stats) const {
    check_pos(p);
    check_pos(q);
    if (p == q) return size() - p + 1;
    return lca(isa(p, stats), isa(q, stats), stats).depth;
}

std::vector<pos_t> Cst::internal_pattern_match(pos_t i, pos_t j) const {
    if (i > j) throw std::invalid_argument("empty pattern");
    check_range(i, j);
    const pos_t r = isa(i);
    auto hit = fwd_.weighted_ancestor(r, r, static_cast<std::int64_t>(j - i + 1), 0);
    std::vector<pos_t> out = sa(hit.leaves.lo, hit.leaves.hi);
    std::sort(out.begin(), out.end());
    return out;
}

symbol_t Cst::letter(const NodeId& id, pos_t k) const {
    check(id);
    if (k < 1 || k > id.depth) throw std::out_of_range("letter index out of range");
    return text(leftmost_position(id) + k - 1);
}

NodeId Cst::deepest_node_by_depth(const NodeId& id) const {
    check(id);
    if (is_leaf(id)) return id;
    const auto& d = g_.node(id.node).deepest_by_depth;
    return make(g_.sink(), id.depth + d.string_depth, id.lo + d.offset);
}

NodeId Cst::deepest_node_by_string_depth(const NodeId& id) const {
    check(id);
    if (is_leaf(id)) return id;
    const auto& d = g_.node(id.node).deepest_by_string;
    return make(g_.sink(), id.depth + d.string_depth, id.lo + d.offset);
}

NodeId Cst::suffix_link_iter(const NodeId& id, pos_t i) const {
    check(id);
    if (i == 0) return id;
    if (i >= id.depth) return root();
    const bool full = mode() == Mode::full;
    if (is_leaf(id)) {
        const pos_t pos = size() - id.depth + 1 + i;
        return make(g_.sink(), id.depth - i, full ? isa(pos) : 0);
    }
    // The leftmost and rightmost leaves leave the node by different arcs, so
    // after dropping i characters their lca is the node we want.
    const pos_t a = leftmost_position(id);
    const pos_t b = size() - (id.depth + g_.node(id.node).right_len) + 1;
    return lca(isa(a + i), isa(b + i));
}

}  // namespace cdawgst
