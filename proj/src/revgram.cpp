#include "cdawgst/revgram.hpp"

#include <set>

#include "cdawgst/serialize.hpp"

namespace cdawgst {

namespace {

std::vector<node_t> topological(const Cdawg& g) {
    std::vector<std::uint32_t> indeg(g.node_count(), 0);
    for (node_t v = 0; v < g.node_count(); ++v) indeg[v] = static_cast<std::uint32_t>(g.in_neighbors(v).size());
    std::vector<node_t> order{g.source()};
    for (std::size_t k = 0; k < order.size(); ++k)
        for (const auto& a : g.out_arcs(order[k]))
            if (--indeg[a.target] == 0) order.push_back(a.target);
    if (order.size() != g.node_count()) throw std::logic_error("revgram: cdawg is not connected");
    return order;
}

}  // namespace

RevGrammar RevGrammar::build(const Cdawg& g) {
    // A node with a single in-neighbor in the CDAWG has out-degree one in
    // the reversed graph and is collapsed into the arcs entering it.
    auto collapsible = [&](node_t v) { return v != g.sink() && g.in_neighbors(v).size() == 1; };

    const auto order = topological(g);
    std::vector<GrammarArc> through(g.node_count());  // collapsed path leaving v, target still a CDAWG node
    for (node_t v : order) {
        if (!collapsible(v)) continue;
        const auto& b = g.in_neighbors(v).front();
        const auto& a = g.arc(b.arc);
        if (collapsible(b.source)) {
            const auto& r = through[b.source];
            // The character stays with the arc closest to the sink.
            through[v] = {r.target, a.weight + r.weight, a.right + r.ext_len, r.ch};
        } else {
            through[v] = {b.source, a.weight, a.right, a.ch};
        }
    }

    RevGrammar rg;
    std::vector<node_t> id(g.node_count(), kNoNode);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (!collapsible(*it)) {
            id[*it] = static_cast<node_t>(rg.origin_.size());
            rg.origin_.push_back(*it);
        }
    rg.begin_.push_back(0);
    for (node_t v : rg.origin_) {
        for (const auto& b : g.in_neighbors(v)) {
            const auto& a = g.arc(b.arc);
            GrammarArc e{b.source, a.weight, a.right, a.ch};
            if (collapsible(b.source)) {
                const auto& r = through[b.source];
                e = {r.target, a.weight + r.weight, a.right + r.ext_len, r.ch};
            }
            e.target = id[e.target];
            rg.arcs_.push_back(e);
        }
        rg.begin_.push_back(static_cast<std::uint32_t>(rg.arcs_.size()));
    }
    return rg;
}

template <class Visit>
void RevGrammar::walk(Visit&& visit) const {
    struct Frame {
        node_t v;
        pos_t weight;
        pos_t length;
        std::uint32_t k;
    };
    std::vector<Frame> stack{{root(), 0, 0, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        auto arcs = out(f.v);
        if (f.k == arcs.size()) {
            stack.pop_back();
            continue;
        }
        const auto& a = arcs[f.k++];
        const pos_t weight = f.weight + a.weight;
        const pos_t length = f.length + a.ext_len;
        if (a.target == sink()) visit(weight, length, a.ch);
        else stack.push_back({a.target, weight, length, 0});
    }
}

std::vector<symbol_t> RevGrammar::expand() const {
    std::vector<symbol_t> t;
    walk([&](pos_t, pos_t, symbol_t c) { t.push_back(c); });
    return t;
}

std::vector<pos_t> RevGrammar::path_weight_sums() const {
    std::vector<pos_t> sums;
    walk([&](pos_t w, pos_t, symbol_t) { sums.push_back(w); });
    return sums;
}

bool RevGrammar::distinct_in_weights() const {
    std::vector<std::set<pos_t>> seen(node_count());
    for (const auto& a : arcs_)
        if (!seen[a.target].insert(a.weight).second) return false;
    return true;
}

OrderedDag RevGrammar::to_dag() const {
    OrderedDag d(node_count());
    for (node_t v = 0; v < node_count(); ++v)
        for (const auto& a : out(v))
            d.add_arc(v, a.target,
                      Values{static_cast<std::int64_t>(a.weight), static_cast<std::int64_t>(a.ext_len), 0, 0},
                      static_cast<std::int64_t>(a.ch));
    return d;
}

void RevGrammar::save(ByteWriter& w) const {
    w.vec_u32(begin_);
    w.u64(arcs_.size());
    for (const auto& a : arcs_) {
        w.u32(a.target);
        w.u64(a.weight);
        w.u64(a.ext_len);
        w.u32(a.ch);
    }
    w.vec_u32(origin_);
}

RevGrammar RevGrammar::load(ByteReader& r) {
    RevGrammar rg;
    rg.begin_ = r.vec_u32();
    const std::uint64_t m = r.u64();
    if (m > r.remaining() / 24) throw format_error("revgram: bad arc count");
    rg.arcs_.resize(m);
    for (auto& a : rg.arcs_) {
        a.target = r.u32();
        a.weight = r.u64();
        a.ext_len = r.u64();
        a.ch = r.u32();
    }
    rg.origin_ = r.vec_u32();
    if (rg.begin_.size() < 3 || rg.origin_.size() + 1 != rg.begin_.size() || rg.begin_.front() != 0 ||
        rg.begin_.back() != m)
        throw format_error("revgram: bad node table");
    for (std::size_t k = 1; k < rg.begin_.size(); ++k)
        if (rg.begin_[k] < rg.begin_[k - 1]) throw format_error("revgram: bad node table");
    for (const auto& a : rg.arcs_)
        if (a.target >= rg.node_count()) throw format_error("revgram: bad arc target");
    return rg;
}

}  // namespace cdawgst
