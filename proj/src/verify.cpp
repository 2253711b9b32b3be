#include "cdawgst/verify.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <sstream>

namespace cdawgst {

std::string format_mismatch(const Mismatch& m) {
    return "MISMATCH op=" + m.op + " args=" + m.args + " expected=" + m.expected + " got=" + m.got;
}

void Report::merge(const Report& o) {
    checks += o.checks;
    mismatches.insert(mismatches.end(), o.mismatches.begin(), o.mismatches.end());
}

namespace {

struct Args {
    std::array<std::int64_t, 3> v{};
    int size = 0;

    std::string str() const {
        std::string s;
        for (int k = 0; k < size; ++k) s += (k ? "," : "") + std::to_string(v[k]);
        return s.empty() ? "-" : s;
    }
};

template <class... T>
Args args(T... x) {
    Args a;
    ((a.v[a.size++] = static_cast<std::int64_t>(x)), ...);
    return a;
}

std::string show(std::uint64_t x) { return std::to_string(x); }
std::string show(std::uint32_t x) { return std::to_string(x); }
std::string show(bool b) { return b ? "true" : "false"; }

template <class T>
std::string show(const std::vector<T>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s + "]";
}

std::string show(const NodeId& id) {
    std::ostringstream os;
    os << "v" << id.node << "/" << id.depth << "[" << id.lo << ".." << id.hi << "]";
    return os.str();
}


std::string show_oracle(const OracleIndex& o, node_t u) {
    if (u == kNoNode) return "none";
    const auto& nd = o.nodes[u];
    std::ostringstream os;
    os << nd.depth << "[" << nd.sp << ".." << nd.ep << "]";
    return os.str();
}

class Checker {
public:
    Checker(Report& r, const VerifyOptions& opt) : r_(r), opt_(opt) {}

    bool done() const { return r_.mismatches.size() >= opt_.max_mismatches; }

    void fail(const char* op, const Args& a, std::string expected, std::string got) {
        if (!done()) r_.mismatches.push_back({op, a.str(), std::move(expected), std::move(got)});
    }

    template <class T>
    void eq(const char* op, const Args& a, const T& expected, const T& got) {
        ++r_.checks;
        if (!(expected == got)) fail(op, a, show(expected), show(got));
    }

    // Runs fn, turning an escaping exception into a mismatch.
    template <class Fn>
    void guard(const char* op, const Args& a, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            ++r_.checks;
            fail(op, a, "a result", std::string("exception: ") + e.what());
        }
    }

    template <class E, class Fn>
    void throws(const char* op, const Args& a, const char* name, Fn&& fn) {
        ++r_.checks;
        try {
            fn();
            fail(op, a, name, "a result");
        } catch (const E&) {
        } catch (const std::exception& e) {
            fail(op, a, name, std::string("exception: ") + e.what());
        }
    }

    Report& report() { return r_; }

private:
    Report& r_;
    const VerifyOptions& opt_;
};

// Enumerates every argument index, or samples them.
class Sampler {
public:
    Sampler(const VerifyOptions& opt, std::uint64_t salt) : opt_(opt), rng_(opt.seed * 1000003 + salt) {}

    template <class Fn>
    void each(std::uint64_t total, Fn&& fn) {
        if (total == 0) return;
        if (opt_.exhaustive) {
            for (std::uint64_t k = 0; k < total; ++k) fn(k);
            return;
        }
        std::uniform_int_distribution<std::uint64_t> d(0, total - 1);
        for (std::uint64_t s = 0; s < opt_.samples; ++s) fn(d(rng_));
    }

    // A parameter in [lo..hi]: all of them, or one at random.
    template <class Fn>
    void param(std::int64_t lo, std::int64_t hi, Fn&& fn) {
        if (hi < lo) return;
        if (opt_.exhaustive) {
            for (std::int64_t x = lo; x <= hi; ++x) fn(x);
            return;
        }
        fn(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_));
    }

    bool exhaustive() const { return opt_.exhaustive; }

private:
    const VerifyOptions& opt_;
    std::mt19937_64 rng_;
};

// Matches facade identifiers against oracle nodes. The CDAWG node of an
// identifier must be a function of the oracle node's class.
class NodeMatch {
public:
    NodeMatch(const Cst& cst, const OracleIndex& o, Checker& ck)
        : cst_(cst), o_(o), ck_(ck), cls_(o.nodes.size(), kNoNode) {}

    bool same(node_t u, const NodeId& id) {
        try {
            cst_.check(id);
        } catch (const std::exception&) {
            return false;
        }
        const auto& nd = o_.nodes[u];
        if (id.depth != nd.depth || cst_.interval(id) != Interval{nd.sp, nd.ep}) return false;
        node_t& c = cls_[nd.class_rep];
        if (c == kNoNode) c = id.node;
        return c == id.node;
    }

    bool eq(const char* op, const Args& a, node_t expected, const NodeId& got) {
        ++ck_.report().checks;
        if (same(expected, got)) return true;
        ck_.fail(op, a, show_oracle(o_, expected), describe(got));
        return false;
    }

    void eq(const char* op, const Args& a, node_t expected, const std::optional<NodeId>& got) {
        if (expected != kNoNode && got) {
            eq(op, a, expected, *got);
            return;
        }
        ++ck_.report().checks;
        if ((expected == kNoNode) != !got) ck_.fail(op, a, show_oracle(o_, expected), got ? describe(*got) : "none");
    }

private:
    std::string describe(const NodeId& id) const {
        std::string s = show(id);
        try {
            cst_.check(id);
            Interval iv = cst_.interval(id);
            s += " interval [" + std::to_string(iv.lo) + ".." + std::to_string(iv.hi) + "]";
        } catch (const std::exception& e) {
            s += std::string(" (") + e.what() + ")";
        }
        return s;
    }

    const Cst& cst_;
    const OracleIndex& o_;
    Checker& ck_;
    std::vector<node_t> cls_;
};

struct OracleExtras {
    std::vector<node_t> deep_string, deep_depth;
    std::vector<pos_t> height_string, height_depth;
    std::vector<std::uint32_t> child_index;  // position among the parent's children
};

OracleExtras extras(const OracleIndex& o) {
    const std::size_t m = o.nodes.size();
    OracleExtras x;
    x.deep_string.assign(m, kNoNode);
    x.deep_depth.assign(m, kNoNode);
    x.height_string.assign(m, 0);
    x.height_depth.assign(m, 0);
    x.child_index.assign(m, 0);
    std::vector<node_t> order{o.root()};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& ch = o.nodes[order[k]].children;
        for (std::uint32_t i = 0; i < ch.size(); ++i) {
            x.child_index[ch[i]] = i;
            order.push_back(ch[i]);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const node_t u = *it;
        const auto& nd = o.nodes[u];
        if (nd.is_leaf()) {
            x.deep_string[u] = x.deep_depth[u] = u;
        } else {
            // Strict comparisons keep the leftmost leaf on ties.
            for (node_t c : nd.children) {
                node_t a = x.deep_string[c], b = x.deep_depth[c];
                if (x.deep_string[u] == kNoNode || o.nodes[a].depth > o.nodes[x.deep_string[u]].depth)
                    x.deep_string[u] = a;
                if (x.deep_depth[u] == kNoNode || o.nodes[b].tree_depth > o.nodes[x.deep_depth[u]].tree_depth)
                    x.deep_depth[u] = b;
            }
        }
        x.height_string[u] = o.nodes[x.deep_string[u]].depth - nd.depth;
        x.height_depth[u] = o.nodes[x.deep_depth[u]].tree_depth - nd.tree_depth;
    }
    return x;
}

// Node reached from u by dropping the first i characters of its label.
node_t oracle_suffix(const OracleIndex& o, node_t u, pos_t i) {
    const auto& nd = o.nodes[u];
    if (i >= nd.depth) return o.root();
    auto iv = o.find(o.substring(o.sa[nd.sp] + i, nd.depth - i));
    return o.locus(*iv);
}

bool oracle_is_ancestor(const OracleIndex& o, node_t a, node_t b) {
    while (o.nodes[b].depth > o.nodes[a].depth) b = o.nodes[b].parent;
    return a == b;
}

std::vector<pos_t> scan_occurrences(const Text& t, pos_t i, pos_t j) {
    std::vector<pos_t> out;
    const pos_t len = j - i + 1;
    for (pos_t p = 1; p + len - 1 <= t.size(); ++p) {
        pos_t k = 0;
        while (k < len && t[p + k] == t[i + k]) ++k;
        if (k == len) out.push_back(p);
    }
    return out;
}

pos_t scan_lce(const Text& t, pos_t p, pos_t q) {
    pos_t k = 0;
    while (p + k <= t.size() && q + k <= t.size() && t[p + k] == t[q + k]) ++k;
    return k;
}

}  // namespace

Report verify_structure(const Cst& cst, const OracleIndex& o, const VerifyOptions& opt) {
    Report r;
    Checker ck(r, opt);
    const Cdawg& g = cst.cdawg();
    const RevGrammar& rg = cst.grammar();
    const Text& t = o.text();
    const pos_t n = o.size();

    std::size_t runs = 0;
    for (pos_t i = 1; i <= n; ++i) runs += i == 1 || o.bwt[i] != o.bwt[i - 1];
    ck.eq("runs<=arcs", args(runs, g.arc_count()), true, runs <= g.arc_count());
    if (g.has_rlbwt()) ck.eq("rlbwt.runs", args(), std::uint64_t{runs}, std::uint64_t{g.rlbwt().runs()});

    // Unroll the CDAWG alongside the oracle suffix tree.
    struct Frame {
        node_t v;
        pos_t depth;
        node_t u;
    };
    std::vector<pos_t> visits(g.node_count(), 0);
    std::vector<std::vector<symbol_t>> labels(g.node_count());
    std::vector<bool> labelled(g.node_count(), false);
    std::size_t tree_nodes = 0;
    std::vector<Frame> stack{{g.source(), 0, o.root()}};
    while (!stack.empty() && !ck.done()) {
        const Frame f = stack.back();
        stack.pop_back();
        ++tree_nodes;
        ++visits[f.v];
        const auto& nd = g.node(f.v);
        const auto& on = o.nodes[f.u];
        const Args a = args(f.v, f.depth);
        ck.eq("regen.depth", a, on.depth, f.depth);
        ck.eq("regen.nleaves", a, on.ep - on.sp + 1, nd.nleaves);
        ck.eq("regen.leaf", a, on.is_leaf(), f.v == g.sink());
        if (f.v != g.sink()) {
            ck.eq("regen.member", a, true, f.depth >= nd.shortest() && f.depth <= nd.length);
            if (f.depth == nd.length) {
                labels[f.v] = o.substring(o.sa[on.sp], f.depth);
                labelled[f.v] = true;
                if (g.mode() == Mode::full) ck.eq("regen.interval", a, Interval{on.sp, on.ep} == Interval{nd.first, nd.last}, true);
            }
        }
        const auto arcs = g.out_arcs(f.v);
        ck.eq("regen.degree", a, std::uint64_t{on.children.size()}, std::uint64_t{arcs.size()});
        if (arcs.size() != on.children.size()) continue;
        for (std::size_t k = arcs.size(); k-- > 0;) {
            const auto& arc = arcs[k];
            const node_t c = on.children[k];
            const Args b = args(f.v, f.depth, k);
            ck.eq("regen.char", b, o.edge_char(c), arc.ch);
            ck.eq("regen.weight", b, o.nodes[c].sp - on.sp, arc.weight);
            stack.push_back({arc.target, f.depth + arc.right, c});
        }
    }
    ck.eq("regen.size", args(), std::uint64_t{o.nodes.size()}, std::uint64_t{tree_nodes});
    for (node_t v = 0; v < g.node_count(); ++v)
        ck.eq("regen.class_size", args(v), v == g.sink() ? n : g.node(v).size, visits[v]);

    std::set<std::vector<symbol_t>> repeats;
    for (node_t v = 0; v < g.sink(); ++v) {
        ck.eq("repeat.labelled", args(v), true, bool(labelled[v]));
        repeats.insert(labels[v]);
    }
    ck.eq("repeat.distinct", args(), std::uint64_t{g.node_count() - 1}, std::uint64_t{repeats.size()});
    ck.eq("repeat.bijection", args(), true, repeats == maximal_repeats(t));

    if (g.mode() == Mode::full)
        for (node_t v = 1; v < g.sink(); ++v) {
            auto res = check_equivalence_class(g, o, v);
            ++r.checks;
            if (!res.ok) ck.fail("class", args(v, res.property), "properties hold", res.detail);
        }

    std::vector<symbol_t> text(t.symbols().begin(), t.symbols().end());
    ck.eq("grammar.expand", args(), text, rg.expand());
    auto sums = rg.path_weight_sums();
    std::vector<pos_t> isa(o.isa.begin() + 1, o.isa.end());
    for (auto& x : sums) ++x;
    ck.eq("grammar.isa", args(), isa, sums);
    ck.eq("grammar.distinct_weights", args(), true, rg.distinct_in_weights());
    ck.eq("grammar.size<=arcs", args(rg.grammar_size(), g.arc_count()), true, rg.grammar_size() <= g.arc_count());
    return r;
}

Report verify_operations(const Cst& cst, const OracleIndex& o, const VerifyOptions& opt) {
    Report r;
    Checker ck(r, opt);
    NodeMatch nm(cst, o, ck);
    Sampler s(opt, 1);
    const Text& t = o.text();
    const pos_t n = o.size();
    const symbol_t sigma = t.sigma();
    const bool full = cst.mode() == Mode::full;
    const auto x = extras(o);
    const node_t m = static_cast<node_t>(o.nodes.size());

    nm.eq("root", args(), o.root(), cst.root());

    // Positions.
    s.each(n, [&](std::uint64_t k) {
        const pos_t i = k + 1;
        const Args a = args(i);
        ck.guard("position", a, [&] {
            ck.eq("sa", a, o.sa[i], cst.sa(i));
            ck.eq("isa", a, o.isa[i], cst.isa(i));
            ck.eq("lcp", a, o.lcp[i], cst.lcp(i));
            ck.eq("plcp", a, o.plcp[i], cst.plcp(i));
            ck.eq("text", a, t[i], cst.text(i));
            const NodeId leaf = cst.select_leaf(i);
            if (nm.eq("selectLeaf", a, o.leaf_of_rank[i], leaf)) {
                ck.eq("leafRank", a, i, cst.leaf_rank(leaf));
                ck.eq("locateLeaf", a, o.sa[i], cst.locate_leaf(leaf));
            }
        });
    });

    // Pairs of positions.
    s.each(n * n, [&](std::uint64_t k) {
        pos_t i = k / n + 1, j = k % n + 1;
        ck.guard("lce", args(i, j), [&] { ck.eq("lce", args(i, j), scan_lce(t, i, j), cst.lce(i, j)); });
        if (i > j) {
            if (s.exhaustive()) return;
            std::swap(i, j);
        }
        const Args a = args(i, j);
        ck.guard("range", a, [&] {
            auto slice = [&](const std::vector<pos_t>& v) {
                return std::vector<pos_t>(v.begin() + static_cast<std::ptrdiff_t>(i),
                                          v.begin() + static_cast<std::ptrdiff_t>(j + 1));
            };
            ck.eq("sa.range", a, slice(o.sa), cst.sa(i, j));
            ck.eq("isa.range", a, slice(o.isa), cst.isa(i, j));
            ck.eq("lcp.range", a, slice(o.lcp), cst.lcp(i, j));
            ck.eq("plcp.range", a, slice(o.plcp), cst.plcp(i, j));
            ck.eq("extract", a, o.substring(i, j - i + 1), cst.extract(i, j));
            nm.eq("lca", a, o.lca(o.leaf_of_rank[i], o.leaf_of_rank[j]), cst.lca(i, j));
            ck.eq("ipm", a, scan_occurrences(t, i, j), cst.internal_pattern_match(i, j));
        });
    });

    // Identifiers of every oracle node, through lca of its leaf interval.
    std::vector<std::optional<NodeId>> ids(m);
    for (node_t u = 0; u < m; ++u) {
        const auto& nd = o.nodes[u];
        ck.guard("lca.node", args(nd.sp, nd.ep), [&] {
            NodeId id = nd.is_leaf() ? cst.select_leaf(nd.sp) : cst.lca(nd.sp, nd.ep);
            if (nm.eq("lca.node", args(nd.sp, nd.ep), u, id)) ids[u] = id;
        });
    }

    s.each(m, [&](std::uint64_t k) {
        const node_t u = static_cast<node_t>(k);
        if (!ids[u]) return;
        const NodeId id = *ids[u];
        const auto& nd = o.nodes[u];
        const Args a = args(nd.sp, nd.ep, nd.depth);
        ck.guard("node", a, [&] {
            ck.eq("stringDepth", a, nd.depth, cst.string_depth(id));
            ck.eq("nLeaves", a, nd.ep - nd.sp + 1, cst.n_leaves(id));
            ck.eq("height", a, x.height_string[u], cst.height(id));
            ck.eq("height.depth", a, x.height_depth[u], cst.height(id, HeightKind::depth));
            ck.eq("isLeaf", a, nd.is_leaf(), cst.is_leaf(id));
            ck.eq("depth", a, nd.tree_depth, cst.depth(id));
            nm.eq("leftmostLeaf", a, o.leaf_of_rank[nd.sp], cst.leftmost_leaf(id));
            nm.eq("rightmostLeaf", a, o.leaf_of_rank[nd.ep], cst.rightmost_leaf(id));
            nm.eq("deepestNode.depth", a, x.deep_depth[u], cst.deepest_node_by_depth(id));
            nm.eq("deepestNode.string", a, x.deep_string[u], cst.deepest_node_by_string_depth(id));
            nm.eq("parent", a, nd.parent, cst.parent(id));
            nm.eq("firstChild", a, nd.is_leaf() ? kNoNode : nd.children.front(), cst.first_child(id));
            node_t sib = kNoNode;
            if (u != o.root()) {
                const auto& siblings = o.nodes[nd.parent].children;
                if (x.child_index[u] + 1 < siblings.size()) sib = siblings[x.child_index[u] + 1];
            }
            nm.eq("nextSibling", a, sib, cst.next_sibling(id));
            nm.eq("suffixLink", a, u == o.root() ? kNoNode : nd.slink, cst.suffix_link(id));
            for (symbol_t c = 0; c <= sigma; ++c) {
                node_t want = kNoNode;
                for (node_t ch : nd.children)
                    if (o.edge_char(ch) == c) want = ch;
                nm.eq("child", args(nd.sp, nd.ep, c), want, cst.child(id, c));
            }
            if (full) {
                for (symbol_t c = 0; c <= sigma; ++c) {
                    std::vector<symbol_t> p{c};
                    auto label = o.substring(o.sa[nd.sp], nd.depth);
                    p.insert(p.end(), label.begin(), label.end());
                    auto iv = o.find(p);
                    nm.eq("weinerLink", args(nd.sp, nd.ep, c), iv ? o.locus(*iv) : kNoNode, cst.weiner_link(id, c));
                }
            } else {
                ck.throws<unsupported_error>("weinerLink", a, "unsupported", [&] { (void)cst.weiner_link(id, 1); });
            }
            s.param(1, static_cast<std::int64_t>(nd.depth), [&](std::int64_t k) {
                ck.eq("letter", args(nd.sp, nd.ep, k), t[o.sa[nd.sp] + k - 1], cst.letter(id, k));
            });
            s.param(0, static_cast<std::int64_t>(nd.depth) + 1, [&](std::int64_t i) {
                nm.eq("suffixLinkIter", args(nd.sp, nd.ep, i), oracle_suffix(o, u, i), cst.suffix_link_iter(id, i));
            });
            s.param(0, static_cast<std::int64_t>(nd.tree_depth), [&](std::int64_t d) {
                node_t w = u;
                while (w != o.root() && o.nodes[o.nodes[w].parent].tree_depth >= static_cast<pos_t>(d))
                    w = o.nodes[w].parent;
                nm.eq("ancestor", args(nd.sp, nd.ep, d), w, cst.ancestor(id, d));
            });
            s.param(0, static_cast<std::int64_t>(nd.depth), [&](std::int64_t d) {
                node_t w = u;
                while (w != o.root() && o.nodes[o.nodes[w].parent].depth >= static_cast<pos_t>(d))
                    w = o.nodes[w].parent;
                nm.eq("strAncestor", args(nd.sp, nd.ep, d), w, cst.str_ancestor(id, d));
            });
            ck.throws<std::domain_error>("ancestor", args(nd.sp, nd.ep, nd.tree_depth + 1), "threshold unreachable",
                                         [&] { (void)cst.ancestor(id, nd.tree_depth + 1); });
            ck.throws<std::domain_error>("strAncestor", args(nd.sp, nd.ep, nd.depth + 1), "threshold unreachable",
                                         [&] { (void)cst.str_ancestor(id, nd.depth + 1); });
        });
    });

    // Pairs of nodes.
    s.each(std::uint64_t{m} * m, [&](std::uint64_t k) {
        const node_t u = static_cast<node_t>(k / m), w = static_cast<node_t>(k % m);
        if (!ids[u] || !ids[w]) return;
        const Args both = args(u, w);
        ck.guard("nodePair", both, [&] {
            ck.eq("isAncestor", both, oracle_is_ancestor(o, u, w), cst.is_ancestor(*ids[u], *ids[w]));
            nm.eq("lca.ids", both, o.lca(u, w), cst.lca(*ids[u], *ids[w]));
        });
    });

    // Malformed arguments.
    ck.throws<std::out_of_range>("selectLeaf", args(0), "out_of_range", [&] { (void)cst.select_leaf(0); });
    ck.throws<std::out_of_range>("sa", args(n + 1), "out_of_range", [&] { (void)cst.sa(n + 1); });
    ck.throws<std::out_of_range>("isa", args(0), "out_of_range", [&] { (void)cst.isa(0); });
    ck.throws<std::out_of_range>("extract", args(1, n + 1), "out_of_range", [&] { (void)cst.extract(1, n + 1); });
    ck.throws<std::out_of_range>("letter", args(0), "out_of_range", [&] { (void)cst.letter(cst.root(), 1); });
    ck.throws<std::invalid_argument>("child", args(sigma + 1), "invalid_argument",
                                     [&] { (void)cst.child(cst.root(), sigma + 1); });
    if (n >= 2)
        ck.throws<std::invalid_argument>("ipm", args(2, 1), "invalid_argument",
                                         [&] { (void)cst.internal_pattern_match(2, 1); });
    ck.throws<std::invalid_argument>("check", args(), "invalid_argument",
                                     [&] { cst.check(NodeId{static_cast<node_t>(cst.cdawg().node_count()), 0, 0, 0}); });
    return r;
}

Report verify_parity(const Cst& full, const Cst& lite, const VerifyOptions& opt) {
    Report r;
    Checker ck(r, opt);
    Sampler s(opt, 2);
    const pos_t n = full.size();
    auto key = [](const NodeId& id) { return std::vector<pos_t>{id.node, id.depth}; };
    auto okey = [&](const std::optional<NodeId>& id) { return id ? key(*id) : std::vector<pos_t>{}; };
    auto lite_id = [](const NodeId& id) { return NodeId{id.node, id.depth, 0, 0}; };

    s.each(n, [&](std::uint64_t k) {
        const pos_t i = k + 1;
        const Args a = args(i);
        ck.guard("parity.position", a, [&] {
            ck.eq("parity.sa", a, full.sa(i), lite.sa(i));
            ck.eq("parity.isa", a, full.isa(i), lite.isa(i));
            ck.eq("parity.lcp", a, full.lcp(i), lite.lcp(i));
            ck.eq("parity.plcp", a, full.plcp(i), lite.plcp(i));
            ck.eq("parity.text", a, full.text(i), lite.text(i));
            ck.eq("parity.selectLeaf", a, key(full.select_leaf(i)), key(lite.select_leaf(i)));
            ck.eq("parity.leafRank", a, i, lite.leaf_rank(lite.select_leaf(i)));
        });
    });
    s.each(n * n, [&](std::uint64_t k) {
        pos_t i = k / n + 1, j = k % n + 1;
        ck.guard("parity.lce", args(i, j), [&] { ck.eq("parity.lce", args(i, j), full.lce(i, j), lite.lce(i, j)); });
        if (i > j) {
            if (s.exhaustive()) return;
            std::swap(i, j);
        }
        const Args a = args(i, j);
        ck.guard("parity.pair", a, [&] {
            ck.eq("parity.lca", a, key(full.lca(i, j)), key(lite.lca(i, j)));
            ck.eq("parity.ipm", a, full.internal_pattern_match(i, j), lite.internal_pattern_match(i, j));
        });
    });

    // Every node, by walking the full tree.
    std::vector<NodeId> nodes;
    std::vector<NodeId> stack{full.root()};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        nodes.push_back(v);
        for (auto c = full.first_child(v); c; c = full.next_sibling(*c)) stack.push_back(*c);
    }
    s.each(nodes.size(), [&](std::uint64_t k) {
        const NodeId& f = nodes[k];
        const NodeId l = lite_id(f);
        const Args a = args(f.lo, f.hi, f.depth);
        ck.guard("parity.node", a, [&] {
            ck.eq("parity.depth", a, full.depth(f), lite.depth(l));
            ck.eq("parity.height", a, full.height(f), lite.height(l));
            ck.eq("parity.nLeaves", a, full.n_leaves(f), lite.n_leaves(l));
            ck.eq("parity.parent", a, okey(full.parent(f)), okey(lite.parent(l)));
            ck.eq("parity.firstChild", a, okey(full.first_child(f)), okey(lite.first_child(l)));
            ck.eq("parity.nextSibling", a, okey(full.next_sibling(f)), okey(lite.next_sibling(l)));
            ck.eq("parity.suffixLink", a, okey(full.suffix_link(f)), okey(lite.suffix_link(l)));
            ck.eq("parity.leftmostLeaf", a, key(full.leftmost_leaf(f)), key(lite.leftmost_leaf(l)));
            ck.eq("parity.rightmostLeaf", a, key(full.rightmost_leaf(f)), key(lite.rightmost_leaf(l)));
            ck.eq("parity.deepestNode", a, key(full.deepest_node_by_depth(f)), key(lite.deepest_node_by_depth(l)));
            ck.eq("parity.interval", a, full.interval(f) == lite.interval(l), true);
            for (symbol_t c = 0; c <= full.sigma(); ++c)
                ck.eq("parity.child", args(f.lo, f.hi, c), okey(full.child(f, c)), okey(lite.child(l, c)));
            s.param(1, static_cast<std::int64_t>(f.depth), [&](std::int64_t k) {
                ck.eq("parity.letter", args(f.lo, f.hi, k), full.letter(f, k), lite.letter(l, k));
            });
            s.param(0, static_cast<std::int64_t>(f.depth), [&](std::int64_t i) {
                ck.eq("parity.suffixLinkIter", args(f.lo, f.hi, i), key(full.suffix_link_iter(f, i)),
                      key(lite.suffix_link_iter(l, i)));
                ck.eq("parity.strAncestor", args(f.lo, f.hi, i), key(full.str_ancestor(f, i)),
                      key(lite.str_ancestor(l, i)));
            });
            s.param(0, static_cast<std::int64_t>(full.depth(f)), [&](std::int64_t d) {
                ck.eq("parity.ancestor", args(f.lo, f.hi, d), key(full.ancestor(f, d)), key(lite.ancestor(l, d)));
            });
        });
    });
    return r;
}

Report verify_text(const Text& text, const VerifyOptions& opt, LaKind la) {
    OracleIndex o(text);
    Cst full = Cst::build(o, Mode::full, la);
    Cst lite = Cst::build(o, Mode::lite, la);
    Report r = verify_structure(full, o, opt);
    for (auto* part : {&full, &lite}) {
        if (r.mismatches.size() >= opt.max_mismatches) return r;
        r.merge(verify_operations(*part, o, opt));
    }
    if (r.mismatches.size() < opt.max_mismatches) r.merge(verify_parity(full, lite, opt));
    return r;
}

}  // namespace cdawgst
