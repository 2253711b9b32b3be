#pragma once

// Explicit T(G) for small DAGs, used as the reference for HpdIndex.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "cdawgst/hpd.hpp"

namespace cdawgst::testing {

struct TreeNode {
    node_t dag_node;
    Values value;
    std::uint64_t lo, hi;
    std::int64_t payload;  // of the arc entering a leaf
    Values in_weight;      // raw weight of the arc from the parent
    std::size_t parent;
    std::vector<std::size_t> children;
};

class BruteTree {
public:
    BruteTree(const OrderedDag& g, const std::vector<Telescoping>& fns) : fns_(fns) {
        auto [source, sink] = g.endpoints();
        (void)sink;
        Values id{};
        for (std::size_t c = 0; c < fns.size(); ++c) id[c] = fns[c].identity;
        grow(g, source, id, 0, static_cast<std::size_t>(-1));
    }

    std::uint64_t leaves() const { return leaf_nodes_.size(); }
    const TreeNode& node(std::size_t k) const { return nodes_[k]; }
    std::size_t size() const { return nodes_.size(); }
    const TreeNode& leaf(std::uint64_t i) const { return nodes_[leaf_nodes_[i - 1]]; }

    std::size_t lca(std::uint64_t i, std::uint64_t j) const {
        std::size_t k = 0;
        for (;;) {
            bool moved = false;
            for (std::size_t c : nodes_[k].children)
                if (nodes_[c].lo <= i && j <= nodes_[c].hi) {
                    k = c;
                    moved = true;
                    break;
                }
            if (!moved) return k;
        }
    }

    /// Node with exactly the leaf interval [i..j], or -1.
    std::ptrdiff_t find(std::uint64_t i, std::uint64_t j) const {
        std::size_t k = lca(i, j);
        return nodes_[k].lo == i && nodes_[k].hi == j ? static_cast<std::ptrdiff_t>(k) : -1;
    }

    std::ptrdiff_t weighted_ancestor(std::size_t k, std::int64_t threshold, int ch) const {
        std::vector<std::size_t> path;
        for (std::size_t x = k; x != static_cast<std::size_t>(-1); x = nodes_[x].parent) path.push_back(x);
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            if (nodes_[*it].value[ch] >= threshold) return static_cast<std::ptrdiff_t>(*it);
        return -1;
    }

private:
    std::uint64_t grow(const OrderedDag& g, node_t v, const Values& value, std::uint64_t before, std::size_t parent,
                       std::int64_t payload = 0, Values in_weight = {}) {
        const std::size_t k = nodes_.size();
        nodes_.push_back({v, value, before + 1, before, payload, in_weight, parent, {}});
        if (parent != static_cast<std::size_t>(-1)) nodes_[parent].children.push_back(k);
        if (g.out(v).empty()) {
            leaf_nodes_.push_back(k);
            nodes_[k].hi = before + 1;
            return 1;
        }
        std::uint64_t total = 0;
        for (const auto& a : g.out(v)) {
            Values next{};
            for (std::size_t c = 0; c < fns_.size(); ++c) next[c] = fns_[c].combine(value[c], fns_[c].g(a.weight[c]));
            total += grow(g, a.target, next, before + total, k, a.payload, a.weight);
        }
        nodes_[k].hi = before + total;
        return total;
    }

    std::vector<Telescoping> fns_;
    std::vector<TreeNode> nodes_;
    std::vector<std::size_t> leaf_nodes_;
};

using Signature = std::vector<std::pair<Values, std::size_t>>;

/// Minimal DAG reachable from `root` as a list of signatures (ordered
/// (weight, child) pairs), numbered by first occurrence in preorder. Two
/// graphs generate the same tree iff their canonical forms are equal.
template <class Children>
std::vector<Signature> canonical_form(std::size_t root, std::size_t count, Children children) {
    std::vector<std::size_t> cls(count, static_cast<std::size_t>(-1));
    std::map<Signature, std::size_t> ids;
    std::vector<Signature> raw;
    auto classify = [&](auto&& self, std::size_t x) -> std::size_t {
        if (cls[x] != static_cast<std::size_t>(-1)) return cls[x];
        Signature sig;
        for (const auto& [w, c] : children(x)) sig.emplace_back(w, self(self, c));
        auto [it, fresh] = ids.emplace(sig, raw.size());
        if (fresh) raw.push_back(sig);
        return cls[x] = it->second;
    };
    const std::size_t top = classify(classify, root);
    std::vector<std::size_t> canon(raw.size(), static_cast<std::size_t>(-1));
    std::vector<Signature> out;
    auto number = [&](auto&& self, std::size_t c) -> void {
        if (canon[c] != static_cast<std::size_t>(-1)) return;
        canon[c] = out.size();
        out.emplace_back();
        for (const auto& [w, child] : raw[c]) self(self, child);
    };
    number(number, top);
    for (std::size_t c = 0; c < raw.size(); ++c) {
        if (canon[c] == static_cast<std::size_t>(-1)) continue;
        Signature sig = raw[c];
        for (auto& [w, child] : sig) child = canon[child];
        out[canon[c]] = sig;
    }
    return out;
}

inline std::vector<Signature> canonical_form(const OrderedDag& g) {
    return canonical_form(g.endpoints().first, g.node_count(), [&](std::size_t v) {
        std::vector<std::pair<Values, std::size_t>> ch;
        for (const auto& a : g.out(static_cast<node_t>(v))) ch.emplace_back(a.weight, a.target);
        return ch;
    });
}

inline std::vector<Signature> canonical_form(const BruteTree& t) {
    return canonical_form(0, t.size(), [&](std::size_t k) {
        std::vector<std::pair<Values, std::size_t>> ch;
        for (std::size_t c : t.node(k).children) ch.emplace_back(t.node(c).in_weight, c);
        return ch;
    });
}

/// Random ordered multigraph DAG: nodes 0..m-1 in topological order, node 0
/// the source and m-1 the sink, every other node with out-degree >= 2.
inline OrderedDag random_dag(std::mt19937_64& rng, int max_nodes, int max_arcs, int max_weight, int channels = 1) {
    for (;;) {
        std::uniform_int_distribution<int> nd(2, max_nodes);
        const int m = nd(rng);
        OrderedDag g(static_cast<std::size_t>(m));
        std::uniform_int_distribution<int> wd(0, max_weight);
        int arcs = 0;
        std::vector<bool> reached(static_cast<std::size_t>(m), false);
        reached[0] = true;
        for (int v = 0; v < m - 1; ++v) {
            std::uniform_int_distribution<int> deg(2, 3);
            std::uniform_int_distribution<int> to(v + 1, m - 1);
            int k = deg(rng);
            for (int t = 0; t < k; ++t) {
                Values w{};
                for (int c = 0; c < channels; ++c) w[c] = wd(rng);
                int target = to(rng);
                g.add_arc(static_cast<node_t>(v), static_cast<node_t>(target), w, 1000 * v + t);
                reached[static_cast<std::size_t>(target)] = true;
                ++arcs;
            }
        }
        bool ok = arcs <= max_arcs;
        for (int v = 1; v < m && ok; ++v) ok = reached[static_cast<std::size_t>(v)];
        if (ok) return g;
    }
}

}  // namespace cdawgst::testing
