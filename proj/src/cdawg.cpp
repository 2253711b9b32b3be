#include "cdawgst/cdawg.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "cdawgst/serialize.hpp"

namespace cdawgst {

namespace {

std::vector<node_t> postorder(const OracleIndex& o) {
    std::vector<node_t> out;
    out.reserve(o.nodes.size());
    std::vector<std::pair<node_t, std::size_t>> stack{{o.root(), 0}};
    while (!stack.empty()) {
        auto& [u, k] = stack.back();
        if (k < o.nodes[u].children.size()) {
            node_t c = o.nodes[u].children[k++];
            stack.emplace_back(c, 0);
        } else {
            out.push_back(u);
            stack.pop_back();
        }
    }
    return out;
}

}  // namespace

Cdawg Cdawg::build(const OracleIndex& o, Mode mode) {
    const pos_t n = o.size();
    const auto& st = o.nodes;
    const auto post = postorder(o);

    // Minimize: two internal nodes merge iff their ordered lists of
    // (first char, label length, child class) coincide. Leaves form the sink.
    constexpr std::uint32_t kSinkClass = 0xffffffffu;
    std::vector<std::uint32_t> sig_class(st.size(), kSinkClass);
    std::map<std::vector<std::array<pos_t, 3>>, std::uint32_t> signatures;
    for (node_t u : post) {
        if (st[u].is_leaf()) continue;
        std::vector<std::array<pos_t, 3>> key;
        key.reserve(st[u].children.size());
        for (node_t c : st[u].children)
            key.push_back({o.edge_char(c), st[c].depth - st[u].depth, sig_class[c]});
        auto [it, fresh] = signatures.emplace(std::move(key), static_cast<std::uint32_t>(signatures.size()));
        sig_class[u] = it->second;
    }

    // Number classes in preorder of first occurrence; the root class is 0.
    std::vector<node_t> id_of_class(signatures.size(), kNoNode);
    node_t next_id = 0;
    {
        std::vector<node_t> stack{o.root()};
        while (!stack.empty()) {
            node_t u = stack.back();
            stack.pop_back();
            if (st[u].is_leaf()) continue;
            if (id_of_class[sig_class[u]] == kNoNode) id_of_class[sig_class[u]] = next_id++;
            for (auto it = st[u].children.rbegin(); it != st[u].children.rend(); ++it) stack.push_back(*it);
        }
    }
    const node_t sink = next_id;
    auto node_of = [&](node_t u) { return st[u].is_leaf() ? sink : id_of_class[sig_class[u]]; };

    std::vector<std::vector<node_t>> members(sink);
    for (node_t u = 0; u < st.size(); ++u)
        if (!st[u].is_leaf()) members[node_of(u)].push_back(u);
    for (auto& m : members)
        std::sort(m.begin(), m.end(), [&](node_t a, node_t b) { return st[a].depth > st[b].depth; });

    // Deepest leaves below every suffix-tree node, by depth and by string
    // depth; ties keep the first leaf in depth-first order.
    std::vector<DeepestLeaf> by_depth(st.size()), by_string(st.size());
    for (node_t u : post) {
        if (st[u].is_leaf()) continue;
        bool have = false;
        for (node_t c : st[u].children) {
            const pos_t edge = st[c].depth - st[u].depth;
            const pos_t shift = st[c].sp - st[u].sp;
            DeepestLeaf d{by_depth[c].offset + shift, by_depth[c].string_depth + edge, by_depth[c].depth + 1};
            DeepestLeaf s{by_string[c].offset + shift, by_string[c].string_depth + edge, by_string[c].depth + 1};
            if (!have || d.depth > by_depth[u].depth) by_depth[u] = d;
            if (!have || s.string_depth > by_string[u].string_depth) by_string[u] = s;
            have = true;
        }
    }

    Cdawg g;
    g.mode_ = mode;
    g.n_ = n;
    g.sigma_ = o.text().sigma();
    g.C_ = o.C;
    g.nodes_.resize(sink + 1);

    for (node_t v = 0; v < sink; ++v) {
        const auto& m = members[v];
        const node_t rep = m.front();
        const auto& r = st[rep];
        auto& nd = g.nodes_[v];
        nd.length = r.depth;
        nd.size = m.size();
        for (std::size_t k = 0; k < m.size(); ++k)
            if (st[m[k]].depth != r.depth - k || st[m[k]].ep - st[m[k]].sp != r.ep - r.sp)
                throw std::logic_error("cdawg: class is not a suffix chain");
        nd.first = r.sp;
        nd.last = r.ep;
        nd.nleaves = r.ep - r.sp + 1;
        nd.left = (n - o.sa[r.sp] + 1) - r.depth;
        nd.right_len = (n - o.sa[r.ep] + 1) - r.depth;
        nd.deepest_by_depth = by_depth[rep];
        nd.deepest_by_string = by_string[rep];
        nd.height_depth = by_depth[rep].depth;
        nd.height_string = by_string[rep].string_depth;

        nd.arc_begin = static_cast<std::uint32_t>(g.arcs_.size());
        for (node_t c : r.children)
            g.arcs_.push_back({node_of(c), o.edge_char(c), st[c].depth - r.depth, st[c].sp - r.sp});
        nd.arc_end = static_cast<std::uint32_t>(g.arcs_.size());

        if (v != g.source()) {
            node_t t = st[m.back()].slink;
            nd.slink = node_of(t);
            if (st[t].depth != st[members[nd.slink].front()].depth)
                throw std::logic_error("cdawg: suffix link of a class does not reach a maximal repeat");
        }
    }
    {
        auto& s = g.nodes_[sink];
        s.length = n;
        s.size = n;
        s.first = s.last = o.isa[1];
        s.nleaves = 1;
        s.arc_begin = s.arc_end = static_cast<std::uint32_t>(g.arcs_.size());
    }

    // In-neighbor partition: an arc (u, w) of label length r maps member p of
    // u to member p + |w| - |u| - r of w.
    std::vector<std::vector<InNeighbor>> incoming(sink + 1);
    for (node_t u = 0; u < sink; ++u)
        for (std::uint32_t a = g.nodes_[u].arc_begin; a < g.nodes_[u].arc_end; ++a) {
            const auto& arc = g.arcs_[a];
            const auto& w = g.nodes_[arc.target];
            incoming[arc.target].push_back({w.length - g.nodes_[u].length - arc.right, u, a});
        }
    for (node_t w = 0; w <= sink; ++w) {
        auto& in = incoming[w];
        std::sort(in.begin(), in.end(), [](const InNeighbor& a, const InNeighbor& b) { return a.offset < b.offset; });
        pos_t expect = 0;
        for (const auto& b : in) {
            if (b.offset != expect) throw std::logic_error("cdawg: in-neighbor blocks do not tile the class");
            expect += g.nodes_[b.source].size;
        }
        if (w != g.source() && expect != g.nodes_[w].size)
            throw std::logic_error("cdawg: in-neighbor blocks do not cover the class");
        g.nodes_[w].in_begin = static_cast<std::uint32_t>(g.in_.size());
        g.in_.insert(g.in_.end(), in.begin(), in.end());
        g.nodes_[w].in_end = static_cast<std::uint32_t>(g.in_.size());
    }

    if (mode == Mode::full) {
        for (node_t v = 0; v <= sink; ++v) {
            auto& nd = g.nodes_[v];
            nd.weiner_begin = static_cast<std::uint32_t>(g.weiner_.size());
            if (v != sink) {
                const auto& r = st[members[v].front()];
                std::vector<symbol_t> pattern{0};
                auto w = o.substring(o.sa[r.sp], r.depth);
                pattern.insert(pattern.end(), w.begin(), w.end());
                for (symbol_t c = v == g.source() ? 0 : 1; c <= g.sigma_; ++c) {
                    pattern[0] = c;
                    auto iv = o.find(pattern);
                    if (!iv) continue;
                    node_t locus = o.locus(*iv);
                    bool expl = !st[locus].is_leaf() && st[locus].depth == r.depth + 1;
                    g.weiner_.push_back({c, node_of(locus), st[locus].depth, expl});
                }
            }
            nd.weiner_end = static_cast<std::uint32_t>(g.weiner_.size());
        }
        g.rlbwt_ = Rlbwt(std::span(o.bwt).subspan(1), g.sigma_);
    } else {
        for (auto& nd : g.nodes_) nd.first = nd.last = 0;
        const auto end = static_cast<std::uint32_t>(g.weiner_.size());
        for (auto& nd : g.nodes_) nd.weiner_begin = nd.weiner_end = end;
    }
    return g;
}

std::span<const CdawgArc> Cdawg::out_arcs(node_t v) const {
    const auto& nd = nodes_[v];
    return std::span(arcs_).subspan(nd.arc_begin, nd.arc_end - nd.arc_begin);
}

std::span<const InNeighbor> Cdawg::in_neighbors(node_t v) const {
    const auto& nd = nodes_[v];
    return std::span(in_).subspan(nd.in_begin, nd.in_end - nd.in_begin);
}

std::span<const WeinerArc> Cdawg::weiner_arcs(node_t v) const {
    const auto& nd = nodes_[v];
    return std::span(weiner_).subspan(nd.weiner_begin, nd.weiner_end - nd.weiner_begin);
}

std::optional<std::uint32_t> Cdawg::find_arc(node_t v, symbol_t c) const {
    auto arcs = out_arcs(v);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), c,
                               [](const CdawgArc& a, symbol_t x) { return a.ch < x; });
    if (it == arcs.end() || it->ch != c) return std::nullopt;
    return nodes_[v].arc_begin + static_cast<std::uint32_t>(it - arcs.begin());
}

const InNeighbor& Cdawg::in_neighbor_at(node_t v, pos_t o) const {
    auto in = in_neighbors(v);
    auto it = std::upper_bound(in.begin(), in.end(), o,
                               [](pos_t x, const InNeighbor& b) { return x < b.offset; });
    if (it == in.begin()) throw std::out_of_range("member offset has no in-neighbor");
    return *(it - 1);
}

const WeinerArc* Cdawg::find_weiner(node_t v, symbol_t c) const {
    auto arcs = weiner_arcs(v);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), c,
                               [](const WeinerArc& a, symbol_t x) { return a.ch < x; });
    if (it == arcs.end() || it->ch != c) return nullptr;
    return &*it;
}

const Rlbwt& Cdawg::rlbwt() const {
    if (!rlbwt_) throw unsupported_error("RLBWT is not stored in lite mode");
    return *rlbwt_;
}

void Cdawg::attach_rlbwt(Rlbwt r) {
    if (r.size() != n_ || r.sigma() != sigma_) throw format_error("rlbwt does not match the cdawg");
    rlbwt_ = std::move(r);
}

void Cdawg::save(ByteWriter& w) const {
    w.u8(static_cast<std::uint8_t>(mode_));
    w.u64(n_);
    w.u32(sigma_);
    w.u64(nodes_.size());
    for (const auto& nd : nodes_) {
        for (pos_t x : {nd.length, nd.size, nd.first, nd.last, nd.nleaves, nd.left, nd.right_len,
                        nd.height_string, nd.height_depth})
            w.u64(x);
        for (const auto* d : {&nd.deepest_by_depth, &nd.deepest_by_string}) {
            w.u64(d->offset);
            w.u64(d->string_depth);
            w.u64(d->depth);
        }
        w.u32(nd.slink);
        for (std::uint32_t x : {nd.arc_begin, nd.arc_end, nd.in_begin, nd.in_end, nd.weiner_begin, nd.weiner_end})
            w.u32(x);
    }
    w.u64(arcs_.size());
    for (const auto& a : arcs_) {
        w.u32(a.target);
        w.u32(a.ch);
        w.u64(a.right);
        w.u64(a.weight);
    }
    w.u64(in_.size());
    for (const auto& b : in_) {
        w.u64(b.offset);
        w.u32(b.source);
        w.u32(b.arc);
    }
    w.u64(weiner_.size());
    for (const auto& x : weiner_) {
        w.u32(x.ch);
        w.u32(x.target);
        w.u64(x.target_depth);
        w.u8(x.is_explicit ? 1 : 0);
    }
    w.vec_u64(C_);
}

Cdawg Cdawg::load(ByteReader& r) {
    Cdawg g;
    std::uint8_t mode = r.u8();
    if (mode > 1) throw format_error("cdawg: bad mode");
    g.mode_ = static_cast<Mode>(mode);
    g.n_ = r.u64();
    g.sigma_ = r.u32();
    std::uint64_t count = r.u64();
    if (count < 2 || count > r.remaining()) throw format_error("cdawg: bad node count");
    g.nodes_.resize(count);
    for (auto& nd : g.nodes_) {
        for (pos_t* x : {&nd.length, &nd.size, &nd.first, &nd.last, &nd.nleaves, &nd.left, &nd.right_len,
                         &nd.height_string, &nd.height_depth})
            *x = r.u64();
        for (auto* d : {&nd.deepest_by_depth, &nd.deepest_by_string}) {
            d->offset = r.u64();
            d->string_depth = r.u64();
            d->depth = r.u64();
        }
        nd.slink = r.u32();
        for (std::uint32_t* x : {&nd.arc_begin, &nd.arc_end, &nd.in_begin, &nd.in_end, &nd.weiner_begin, &nd.weiner_end})
            *x = r.u32();
    }
    std::uint64_t arcs = r.u64();
    if (arcs > r.remaining()) throw format_error("cdawg: bad arc count");
    g.arcs_.resize(arcs);
    for (auto& a : g.arcs_) {
        a.target = r.u32();
        a.ch = r.u32();
        a.right = r.u64();
        a.weight = r.u64();
        if (a.target >= count || a.ch > g.sigma_) throw format_error("cdawg: bad arc");
    }
    std::uint64_t in = r.u64();
    if (in > r.remaining()) throw format_error("cdawg: bad in-neighbor count");
    g.in_.resize(in);
    for (auto& b : g.in_) {
        b.offset = r.u64();
        b.source = r.u32();
        b.arc = r.u32();
        if (b.source >= count || b.arc >= arcs) throw format_error("cdawg: bad in-neighbor");
    }
    std::uint64_t wn = r.u64();
    if (wn > r.remaining()) throw format_error("cdawg: bad weiner count");
    g.weiner_.resize(wn);
    for (auto& x : g.weiner_) {
        x.ch = r.u32();
        x.target = r.u32();
        x.target_depth = r.u64();
        x.is_explicit = r.u8() != 0;
        if (x.target >= count || x.ch > g.sigma_) throw format_error("cdawg: bad weiner arc");
    }
    g.C_ = r.vec_u64();
    if (g.C_.size() != static_cast<std::size_t>(g.sigma_) + 2) throw format_error("cdawg: bad C array");
    for (const auto& nd : g.nodes_) {
        if (nd.arc_begin > nd.arc_end || nd.arc_end > arcs || nd.in_begin > nd.in_end || nd.in_end > in ||
            nd.weiner_begin > nd.weiner_end || nd.weiner_end > wn)
            throw format_error("cdawg: bad adjacency range");
        if (nd.slink != kNoNode && nd.slink >= count) throw format_error("cdawg: bad suffix link");
    }
    return g;
}

// ---------------------------------------------------------------------------

std::optional<Interval> extend_left(const Rlbwt& bwt, std::span<const pos_t> C, Interval iv, symbol_t c) {
    // Backward search. When BWT[lo..hi] is a run of c this is
    // C[c] + rank_c(lo) with the width unchanged.
    pos_t lo = C[c] + bwt.rank(c, iv.lo - 1) + 1;
    pos_t hi = C[c] + bwt.rank(c, iv.hi);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

std::pair<Interval, symbol_t> contract_left(const Rlbwt& bwt, std::span<const pos_t> C, Interval iv) {
    // Largest c with C[c] < lo.
    auto it = std::lower_bound(C.begin(), C.end(), iv.lo);
    auto c = static_cast<symbol_t>(it - C.begin() - 1);
    pos_t p = bwt.select(c, iv.lo - C[c]);
    return {{p, p + iv.hi - iv.lo}, c};
}

ClassCheck check_equivalence_class(const Cdawg& g, const OracleIndex& o, node_t v) {
    if (v == g.source() || v == g.sink()) throw std::invalid_argument("source and sink have no class to check");
    const auto& nd = g.node(v);
    const auto& bwt = g.rlbwt();
    auto fail = [](int prop, std::string msg) { return ClassCheck{false, prop, std::move(msg)}; };

    const auto w = o.substring(o.sa[nd.first], nd.length);
    std::vector<Interval> iv(nd.size);
    for (pos_t i = 0; i < nd.size; ++i) {
        auto found = o.find(std::span(w).subspan(i));
        if (!found) return fail(1, "member " + std::to_string(i + 1) + " does not occur");
        iv[i] = *found;
        if (iv[i].width() != iv[0].width()) return fail(1, "member " + std::to_string(i + 1) + " width differs");
    }
    for (pos_t i = 0; i < nd.size; ++i) {
        bool unary = true;
        for (pos_t k = iv[i].lo; k <= iv[i].hi; ++k) unary = unary && o.bwt[k] == o.bwt[iv[i].lo];
        if (i == 0 && unary) return fail(2, "longest member has a unary BWT interval");
        if (i > 0 && (!unary || o.bwt[iv[i].lo] != w[i - 1]))
            return fail(2, "member " + std::to_string(i + 1) + " is not preceded by a single character");
    }
    for (pos_t i = 1; i < nd.size; ++i)
        if (extend_left(bwt, g.C(), iv[i], w[i - 1]) != std::optional<Interval>(iv[i - 1]))
            return fail(3, "left extension of member " + std::to_string(i + 1));
    for (pos_t i = 0; i + 1 < nd.size; ++i) {
        auto [next, c] = contract_left(bwt, g.C(), iv[i]);
        if (next != iv[i + 1] || c != w[i]) return fail(4, "left contraction of member " + std::to_string(i + 1));
    }
    for (const auto& arc : g.out_arcs(v)) {
        for (pos_t i = 0; i < nd.size; ++i) {
            std::vector<symbol_t> wc(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
            wc.push_back(arc.ch);
            auto child = o.find(wc);
            if (!child) return fail(5, "member extension does not occur");
            if (child->lo - iv[i].lo != arc.weight)
                return fail(5, "child offset differs at member " + std::to_string(i + 1));
        }
    }
    return {};
}

}  // namespace cdawgst
