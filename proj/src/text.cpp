#include "cdawgst/text.hpp"

#include <algorithm>
#include <numeric>

namespace cdawgst {

std::optional<symbol_t> Text::code_of(std::uint8_t byte) const {
    auto it = std::lower_bound(code_to_byte_.begin(), code_to_byte_.end(), byte);
    if (it == code_to_byte_.end() || *it != byte) return std::nullopt;
    return static_cast<symbol_t>(it - code_to_byte_.begin()) + 1;
}

std::string Text::decode(std::span<const symbol_t> codes, char terminal) const {
    std::string out;
    out.reserve(codes.size());
    for (symbol_t c : codes) out.push_back(c == 0 ? terminal : static_cast<char>(byte_of(c)));
    return out;
}

Text Text::from_parts(std::vector<symbol_t> symbols, std::vector<std::uint8_t> alphabet) {
    if (symbols.empty() || symbols.back() != 0)
        throw std::invalid_argument("text must end with the terminal");
    if (!std::is_sorted(alphabet.begin(), alphabet.end()) ||
        std::adjacent_find(alphabet.begin(), alphabet.end()) != alphabet.end())
        throw std::invalid_argument("alphabet must be strictly increasing");
    std::vector<bool> seen(alphabet.size() + 1, false);
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
        if (symbols[i] == 0 || symbols[i] > alphabet.size())
            throw std::invalid_argument("symbol out of range");
        seen[symbols[i]] = true;
    }
    for (std::size_t c = 1; c <= alphabet.size(); ++c)
        if (!seen[c]) throw std::invalid_argument("alphabet is not dense");
    Text t;
    t.symbols_ = std::move(symbols);
    t.code_to_byte_ = std::move(alphabet);
    t.sigma_ = static_cast<symbol_t>(t.code_to_byte_.size());
    return t;
}

Text normalize(std::span<const std::uint8_t> raw) {
    if (raw.empty()) throw std::invalid_argument("empty text");
    std::array<bool, 256> present{};
    for (std::uint8_t b : raw) present[b] = true;
    std::array<symbol_t, 256> code{};
    Text t;
    for (unsigned b = 0; b < 256; ++b) {
        if (!present[b]) continue;
        t.code_to_byte_.push_back(static_cast<std::uint8_t>(b));
        code[b] = static_cast<symbol_t>(t.code_to_byte_.size());
    }
    t.sigma_ = static_cast<symbol_t>(t.code_to_byte_.size());
    t.symbols_.reserve(raw.size() + 1);
    for (std::uint8_t b : raw) t.symbols_.push_back(code[b]);
    t.symbols_.push_back(0);
    return t;
}

Text normalize(std::string_view raw) {
    return normalize(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
}

// ---------------------------------------------------------------------------

OracleIndex::OracleIndex(const Text& text) : text_(text), n_(text.size()) {
    const auto sym = text_.symbols();
    const pos_t n = n_;

    sa.assign(n + 1, 0);
    std::iota(sa.begin() + 1, sa.end(), pos_t{1});
    std::sort(sa.begin() + 1, sa.end(), [&](pos_t a, pos_t b) {
        auto ia = sym.begin() + static_cast<std::ptrdiff_t>(a - 1);
        auto ib = sym.begin() + static_cast<std::ptrdiff_t>(b - 1);
        auto [ma, mb] = std::mismatch(ia, sym.end(), ib, sym.end());
        if (ma == sym.end()) return mb != sym.end();
        if (mb == sym.end()) return false;
        return *ma < *mb;
    });

    isa.assign(n + 1, 0);
    for (pos_t r = 1; r <= n; ++r) isa[sa[r]] = r;

    lcp.assign(n + 1, 0);
    for (pos_t r = 2; r <= n; ++r) {
        pos_t a = sa[r - 1], b = sa[r], l = 0;
        while (a + l <= n && b + l <= n && text_[a + l] == text_[b + l]) ++l;
        lcp[r] = l;
    }
    plcp.assign(n + 1, 0);
    for (pos_t i = 1; i <= n; ++i) plcp[i] = lcp[isa[i]];

    bwt.assign(n + 1, 0);
    for (pos_t r = 1; r <= n; ++r) bwt[r] = sa[r] == 1 ? text_[n] : text_[sa[r] - 1];

    C.assign(text_.sigma() + 2, 0);
    for (pos_t i = 1; i <= n; ++i) ++C[text_[i] + 1];
    for (std::size_t c = 1; c < C.size(); ++c) C[c] += C[c - 1];

    build_tree();
    link_tree();
}

void OracleIndex::build_tree() {
    const pos_t n = n_;
    nodes.clear();
    nodes.push_back(OracleNode{});
    nodes[0].sp = 1;
    nodes[0].ep = n;
    leaf_of_rank.assign(n + 1, kNoNode);

    auto attach = [&](node_t parent, node_t child) {
        nodes[child].parent = parent;
        nodes[parent].children.push_back(child);
    };

    std::vector<node_t> stack{0};
    for (pos_t r = 1; r <= n; ++r) {
        const pos_t h = r == 1 ? 0 : lcp[r];
        while (nodes[stack.back()].depth > h) {
            node_t last = stack.back();
            stack.pop_back();
            nodes[last].ep = r - 1;
            if (nodes[stack.back()].depth >= h) {
                attach(stack.back(), last);
            } else {
                auto x = static_cast<node_t>(nodes.size());
                OracleNode inner;
                inner.depth = h;
                inner.sp = nodes[last].sp;
                nodes.push_back(std::move(inner));
                attach(x, last);
                stack.push_back(x);
            }
        }
        auto leaf = static_cast<node_t>(nodes.size());
        OracleNode lf;
        lf.depth = n - sa[r] + 1;
        lf.sp = lf.ep = r;
        nodes.push_back(std::move(lf));
        leaf_of_rank[r] = leaf;
        stack.push_back(leaf);
    }
    while (stack.size() > 1) {
        node_t last = stack.back();
        stack.pop_back();
        nodes[last].ep = n;
        attach(stack.back(), last);
    }
}

void OracleIndex::link_tree() {
    const pos_t n = n_;
    // Parents precede children in construction order except for inner nodes
    // created late; compute tree depth by explicit traversal.
    std::vector<node_t> order{0};
    for (std::size_t k = 0; k < order.size(); ++k)
        for (node_t c : nodes[order[k]].children) {
            nodes[c].tree_depth = nodes[order[k]].tree_depth + 1;
            order.push_back(c);
        }

    for (node_t v = 1; v < nodes.size(); ++v) {
        auto& nd = nodes[v];
        if (nd.is_leaf()) {
            pos_t p = sa[nd.sp];
            nd.slink = p == n ? 0 : leaf_of_rank[isa[p + 1]];
            continue;
        }
        // Label aW; walk up from the leaf of the suffix that drops a.
        pos_t p = sa[nd.sp];
        node_t u = leaf_of_rank[isa[p + 1]];
        while (nodes[u].depth > nd.depth - 1) u = nodes[u].parent;
        nd.slink = u;
    }

    // Class representatives: aW and W share end positions iff they occur
    // equally often. Deeper nodes first so that chains resolve in one pass.
    std::vector<node_t> by_depth(nodes.size());
    std::iota(by_depth.begin(), by_depth.end(), node_t{0});
    std::stable_sort(by_depth.begin(), by_depth.end(),
                     [&](node_t a, node_t b) { return nodes[a].depth > nodes[b].depth; });
    for (auto& nd : nodes) nd.class_rep = kNoNode;
    const node_t whole = leaf_of_rank[isa[1]];
    for (node_t v : by_depth) {
        auto& nd = nodes[v];
        if (nd.is_leaf()) {
            nd.class_rep = whole;
            continue;
        }
        if (nd.class_rep == kNoNode) nd.class_rep = v;
        if (v == 0) continue;
        auto& s = nodes[nd.slink];
        if (s.ep - s.sp == nd.ep - nd.sp) s.class_rep = nd.class_rep;
    }
}

std::optional<Interval> OracleIndex::find(std::span<const symbol_t> pattern) const {
    const auto sym = text_.symbols();
    // -1: suffix < pattern, 0: pattern is a prefix, 1: suffix > pattern.
    auto cmp = [&](pos_t p) {
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            if (p - 1 + k >= sym.size()) return -1;
            symbol_t c = sym[p - 1 + k];
            if (c != pattern[k]) return c < pattern[k] ? -1 : 1;
        }
        return 0;
    };
    pos_t lo = 1, hi = n_ + 1;
    while (lo < hi) {
        pos_t mid = (lo + hi) / 2;
        if (cmp(sa[mid]) < 0) lo = mid + 1; else hi = mid;
    }
    pos_t first = lo;
    hi = n_ + 1;
    while (lo < hi) {
        pos_t mid = (lo + hi) / 2;
        if (cmp(sa[mid]) <= 0) lo = mid + 1; else hi = mid;
    }
    if (first >= lo) return std::nullopt;
    return Interval{first, lo - 1};
}

node_t OracleIndex::lca(node_t a, node_t b) const {
    while (nodes[a].tree_depth > nodes[b].tree_depth) a = nodes[a].parent;
    while (nodes[b].tree_depth > nodes[a].tree_depth) b = nodes[b].parent;
    while (a != b) {
        a = nodes[a].parent;
        b = nodes[b].parent;
    }
    return a;
}

node_t OracleIndex::locus(Interval iv) const {
    return lca(leaf_of_rank[iv.lo], leaf_of_rank[iv.hi]);
}

symbol_t OracleIndex::edge_char(node_t child) const {
    const auto& c = nodes[child];
    return text_[sa[c.sp] + nodes[c.parent].depth];
}

std::vector<symbol_t> OracleIndex::substring(pos_t pos, pos_t len) const {
    auto sym = text_.symbols();
    return {sym.begin() + static_cast<std::ptrdiff_t>(pos - 1),
            sym.begin() + static_cast<std::ptrdiff_t>(pos - 1 + len)};
}

std::set<std::vector<symbol_t>> maximal_repeats(const Text& text) {
    const pos_t n = text.size();
    std::set<std::vector<symbol_t>> out;
    out.insert(std::vector<symbol_t>{});  // every text has a letter and the terminal
    auto sym = text.symbols();
    std::set<std::vector<symbol_t>> seen;
    for (pos_t i = 1; i < n; ++i) {
        for (pos_t len = 1; i + len - 1 < n; ++len) {
            std::vector<symbol_t> w(sym.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                    sym.begin() + static_cast<std::ptrdiff_t>(i - 1 + len));
            if (!seen.insert(w).second) continue;
            std::set<symbol_t> left, right;
            std::size_t occ = 0;
            for (pos_t p = 1; p + len - 1 < n; ++p) {
                if (!std::equal(w.begin(), w.end(), sym.begin() + static_cast<std::ptrdiff_t>(p - 1)))
                    continue;
                ++occ;
                left.insert(p == 1 ? text[n] : text[p - 1]);
                right.insert(text[p + len]);
            }
            if (occ > 1 && left.size() > 1 && right.size() > 1) out.insert(std::move(w));
        }
    }
    return out;
}

}  // namespace cdawgst
