#include "cdawgst/hpd.hpp"

#include <bit>

#include "cdawgst/serialize.hpp"

namespace cdawgst {

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) { return a + b; }
std::int64_t negate(std::int64_t a) { return -a; }
std::int64_t same(std::int64_t w) { return w; }
std::int64_t one(std::int64_t) { return 1; }

}  // namespace

const Telescoping Telescoping::sum{0, &same, &add, &negate, 0};
const Telescoping Telescoping::unit{1, &one, &add, &negate, 0};

const Telescoping& Telescoping::by_id(std::uint8_t id) {
    if (id == sum.id) return sum;
    if (id == unit.id) return unit;
    throw format_error("unknown telescoping function id " + std::to_string(id));
}

// ---------------------------------------------------------------------------

std::size_t OrderedDag::arc_count() const {
    std::size_t m = 0;
    for (const auto& o : out_) m += o.size();
    return m;
}

std::vector<node_t> OrderedDag::reverse_topological() const {
    const std::size_t m = out_.size();
    std::vector<std::uint32_t> pending(m);
    std::vector<std::vector<node_t>> in(m);
    for (node_t v = 0; v < m; ++v)
        for (const auto& a : out_[v]) {
            if (a.target >= m) throw std::invalid_argument("arc target out of range");
            in[a.target].push_back(v);
            ++pending[v];
        }
    std::vector<node_t> order;
    for (node_t v = 0; v < m; ++v)
        if (pending[v] == 0) order.push_back(v);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (node_t p : in[order[k]])
            if (--pending[p] == 0) order.push_back(p);
    if (order.size() != m) throw std::invalid_argument("graph has a cycle");
    return order;
}

std::pair<node_t, node_t> OrderedDag::endpoints() const {
    reverse_topological();
    std::vector<bool> has_in(out_.size(), false);
    for (const auto& o : out_)
        for (const auto& a : o) has_in[a.target] = true;
    node_t source = kNoNode, sink = kNoNode;
    for (node_t v = 0; v < out_.size(); ++v) {
        if (!has_in[v]) {
            if (source != kNoNode) throw std::invalid_argument("more than one source");
            source = v;
        }
        if (out_[v].empty()) {
            if (sink != kNoNode) throw std::invalid_argument("more than one sink");
            sink = v;
        }
    }
    if (source == kNoNode || sink == kNoNode || source == sink)
        throw std::invalid_argument("dag needs a distinct source and sink");
    return {source, sink};
}

// ---------------------------------------------------------------------------

LevelAncestor::LevelAncestor(std::span<const node_t> parent, std::span<const std::uint32_t> depth, LaKind kind)
    : kind_(kind), parent_(parent.begin(), parent.end()), depth_(depth.begin(), depth.end()) {
    const std::size_t n = parent_.size();
    std::uint32_t max_depth = 0;
    for (auto d : depth_) max_depth = std::max(max_depth, d);
    if (kind == LaKind::binary_lifting) {
        Lifting l;
        const int levels = std::max(1, static_cast<int>(std::bit_width(max_depth)));
        l.up.assign(levels, std::vector<node_t>(n));
        for (node_t u = 0; u < n; ++u) l.up[0][u] = parent_[u] == kNoNode ? u : parent_[u];
        for (int k = 1; k < levels; ++k)
            for (node_t u = 0; u < n; ++u) l.up[k][u] = l.up[k - 1][l.up[k - 1][u]];
        impl_ = std::move(l);
        return;
    }
    // Subtree sizes, deepest nodes first.
    std::vector<node_t> by_depth(n);
    for (node_t u = 0; u < n; ++u) by_depth[u] = u;
    std::stable_sort(by_depth.begin(), by_depth.end(), [&](node_t a, node_t b) { return depth_[a] > depth_[b]; });
    std::vector<std::uint64_t> size(n, 1);
    std::vector<node_t> heavy(n, kNoNode);
    for (node_t u : by_depth) {
        node_t p = parent_[u];
        if (p == kNoNode) continue;
        size[p] += size[u];
        if (heavy[p] == kNoNode || size[u] > size[heavy[p]]) heavy[p] = u;
    }
    Ladder l;
    l.head.assign(n, kNoNode);
    l.path_of.assign(n, 0);
    for (auto it = by_depth.rbegin(); it != by_depth.rend(); ++it) {
        node_t u = *it;
        node_t p = parent_[u];
        if (p != kNoNode && heavy[p] == u) continue;
        auto pid = static_cast<std::uint32_t>(l.path_start.size());
        l.path_start.push_back(static_cast<std::uint32_t>(l.path_nodes.size()));
        for (node_t x = u; x != kNoNode; x = heavy[x]) {
            l.head[x] = u;
            l.path_of[x] = pid;
            l.path_nodes.push_back(x);
        }
    }
    impl_ = std::move(l);
}

node_t LevelAncestor::query(node_t u, std::uint32_t d) const {
    if (d > depth_[u]) throw std::out_of_range("level ancestor below the node");
    if (const auto* l = std::get_if<Lifting>(&impl_)) {
        std::uint32_t diff = depth_[u] - d;
        for (int k = 0; diff != 0; ++k, diff >>= 1)
            if (diff & 1u) u = l->up[k][u];
        return u;
    }
    const auto& l = std::get<Ladder>(impl_);
    while (depth_[l.head[u]] > d) u = parent_[l.head[u]];
    return l.path_nodes[l.path_start[l.path_of[u]] + (d - depth_[l.head[u]])];
}

std::size_t LevelAncestor::words() const {
    std::size_t w = parent_.size() + depth_.size();
    if (const auto* l = std::get_if<Lifting>(&impl_)) {
        for (const auto& row : l->up) w += row.size();
    } else if (const auto* p = std::get_if<Ladder>(&impl_)) {
        w += p->head.size() + p->path_of.size() + p->path_start.size() + p->path_nodes.size();
    }
    return w;
}

// ---------------------------------------------------------------------------

HpdIndex::HpdIndex(const OrderedDag& dag, std::vector<Telescoping> channels, LaKind la) : fns_(std::move(channels)) {
    if (fns_.empty() || fns_.size() > static_cast<std::size_t>(kMaxChannels))
        throw std::invalid_argument("between 1 and 4 channels are supported");
    auto [source, sink] = dag.endpoints();
    const std::size_t m = dag.node_count();
    for (node_t v = 0; v < m; ++v)
        if (v != sink && dag.out(v).size() < 2) throw std::invalid_argument("collapse required");
    root_ = source;
    sink_ = sink;

    auto f_of = [&](const DagArc& a) {
        Values f{};
        for (std::size_t c = 0; c < fns_.size(); ++c) f[c] = fns_[c].g(a.weight[c]);
        return f;
    };
    const Values id = identity();

    left_.assign(m, kNoNode);
    right_.assign(m, kNoNode);
    left_f_.assign(m, id);
    right_f_.assign(m, id);
    left_payload_.assign(m, 0);
    right_payload_.assign(m, 0);
    real_.resize(m);
    for (node_t v = 0; v < m; ++v) real_[v] = v;
    real_offset_.assign(m, 0);

    // Left-leaning chain: arc 1 splits off at v, arc t at the (t-1)-th
    // artificial node, and the last two arcs share the last node.
    std::vector<std::vector<node_t>> chain(m);
    for (node_t v = 0; v < m; ++v) {
        auto arcs = dag.out(v);
        if (arcs.empty()) continue;
        node_t cur = v;
        for (std::size_t t = 0; t + 1 < arcs.size(); ++t) {
            left_[cur] = arcs[t].target;
            left_f_[cur] = f_of(arcs[t]);
            left_payload_[cur] = arcs[t].payload;
            if (t + 2 == arcs.size()) {
                right_[cur] = arcs[t + 1].target;
                right_f_[cur] = f_of(arcs[t + 1]);
                right_payload_[cur] = arcs[t + 1].payload;
            } else {
                auto x = static_cast<node_t>(left_.size());
                left_.push_back(kNoNode);
                right_.push_back(kNoNode);
                left_f_.push_back(id);
                right_f_.push_back(id);
                left_payload_.push_back(0);
                right_payload_.push_back(0);
                real_.push_back(v);
                real_offset_.push_back(0);
                chain[v].push_back(x);
                right_[cur] = x;
                cur = x;
            }
        }
    }

    const std::size_t total = left_.size();
    nleaves_.assign(total, 0);
    std::vector<node_t> order;  // children before parents in G'
    order.reserve(total);
    for (node_t v : dag.reverse_topological()) {
        for (auto it = chain[v].rbegin(); it != chain[v].rend(); ++it) order.push_back(*it);
        order.push_back(v);
    }
    for (node_t x : order) nleaves_[x] = x == sink_ ? 1 : nleaves_[left_[x]] + nleaves_[right_[x]];
    for (node_t v = 0; v < m; ++v) {
        std::uint64_t before = nleaves_[left_[v] == kNoNode ? v : left_[v]];
        for (node_t x : chain[v]) {
            real_offset_[x] = before;
            before += nleaves_[left_[x]];
        }
    }

    heavy_.assign(total, kLeft);
    tparent_.assign(total, kNoNode);
    tdepth_.assign(total, 0);
    count_.assign(total, id);
    lcnt_.assign(total, 0);
    rcnt_.assign(total, 0);
    heavy_payload_.assign(total, 0);
    next_left_.assign(total, kNoNode);
    next_right_.assign(total, kNoNode);
    for (node_t x : order) {
        if (x == sink_) continue;
        const bool go_left = nleaves_[left_[x]] >= nleaves_[right_[x]];
        heavy_[x] = go_left ? kLeft : kRight;
        const node_t h = go_left ? left_[x] : right_[x];
        tparent_[x] = h;
        tdepth_[x] = tdepth_[h] + 1;
        count_[x] = compose(go_left ? left_f_[x] : right_f_[x], count_[h]);
        lcnt_[x] = lcnt_[h] + (go_left ? 0 : nleaves_[left_[x]]);
        rcnt_[x] = rcnt_[h] + (go_left ? nleaves_[right_[x]] : 0);
        heavy_payload_[x] = h == sink_ ? (go_left ? left_payload_[x] : right_payload_[x]) : heavy_payload_[h];
        next_left_[x] = go_left ? next_left_[h] : x;
        next_right_[x] = go_left ? x : next_right_[h];
    }
    la_ = LevelAncestor(tparent_, tdepth_, la);
}

Values HpdIndex::identity() const {
    Values v{};
    for (std::size_t c = 0; c < fns_.size(); ++c) v[c] = fns_[c].identity;
    return v;
}

Values HpdIndex::compose(const Values& a, const Values& b) const {
    Values v{};
    for (std::size_t c = 0; c < fns_.size(); ++c) v[c] = fns_[c].combine(a[c], b[c]);
    return v;
}

// f from the root to a, where a lies on the heavy path of u and `acc` is f
// from the root to u.
Values HpdIndex::value_at(node_t u, const Values& acc, node_t a) const {
    Values v{};
    for (std::size_t c = 0; c < fns_.size(); ++c)
        v[c] = fns_[c].combine(acc[c], fns_[c].combine(count_[u][c], fns_[c].inverse(count_[a][c])));
    return v;
}

Values HpdIndex::through(node_t a, Side side, const Values& at_a) const {
    return compose(at_a, side == kLeft ? left_f_[a] : right_f_[a]);
}

std::uint64_t HpdIndex::first_rank(node_t u, node_t a) const { return lcnt_[u] - lcnt_[a]; }

HpdIndex::Exit HpdIndex::find_exit(node_t u, std::uint64_t r, QueryStats* stats) const {
    if (stats) ++stats->probes;
    if (r == lcnt_[u] + 1) return {sink_, kHeavyLeaf, 1};
    const bool left = r <= lcnt_[u];
    const auto& cnt = left ? lcnt_ : rcnt_;
    // Rank counted from the side the light subtree hangs on.
    const std::uint64_t q = left ? r : nleaves_[u] - r + 1;
    const std::uint64_t threshold = cnt[u] - q;
    // Highest ancestor still counting more than `threshold`.
    const node_t a =
        la_.highest(u, [&](node_t x) { return cnt[x] > threshold; }, stats ? &stats->probes : nullptr);
    const std::uint64_t inner = q - (cnt[u] - cnt[a]);
    if (left) return {a, kLeft, inner};
    return {a, kRight, nleaves_[right_[a]] - inner + 1};
}

HpdIndex::NodeHit HpdIndex::hit(node_t a, const Values& value, std::uint64_t lo) const {
    const node_t v = real_[a];
    lo -= real_offset_[a];
    return {v, value, {lo, lo + nleaves_[v] - 1}};
}

void HpdIndex::check_leaf(std::uint64_t i) const {
    if (i < 1 || i > leaf_count()) throw std::out_of_range("leaf index out of range");
}

HpdIndex::Leaf HpdIndex::leaf_eval(std::uint64_t i, QueryStats* stats) const {
    check_leaf(i);
    node_t u = root_;
    Values acc = identity();
    std::uint64_t r = i;
    std::int64_t in_payload = 0;
    std::uint64_t light = 0;
    for (;;) {
        Exit e = find_exit(u, r, stats);
        if (e.side == kHeavyLeaf) {
            if (stats) {
                ++stats->descents;
                stats->light_edges += light;
                stats->max_light_per_descent = std::max(stats->max_light_per_descent, light);
            }
            return {value_at(u, acc, sink_), u == sink_ ? in_payload : heavy_payload_[u]};
        }
        acc = through(e.node, e.side, value_at(u, acc, e.node));
        in_payload = e.side == kLeft ? left_payload_[e.node] : right_payload_[e.node];
        u = e.side == kLeft ? left_[e.node] : right_[e.node];
        r = e.rank;
        ++light;
    }
}

HpdIndex::NodeHit HpdIndex::lca_map(std::uint64_t i, std::uint64_t j, QueryStats* stats) const {
    check_leaf(i);
    check_leaf(j);
    if (i > j) throw std::invalid_argument("leaf range is empty");
    if (i == j) {
        Leaf l = leaf_eval(i, stats);
        return {real_[sink_], l.value, {i, i}};
    }
    node_t u = root_;
    Values acc = identity();
    std::uint64_t base = 0;
    std::uint64_t light = 0;
    for (;;) {
        Exit ei = find_exit(u, i - base, stats);
        Exit ej = find_exit(u, j - base, stats);
        if (ei.node == ej.node && ei.side == ej.side) {
            const node_t a = ei.node;
            base += first_rank(u, a) + (ei.side == kRight ? nleaves_[left_[a]] : 0);
            acc = through(a, ei.side, value_at(u, acc, a));
            u = ei.side == kLeft ? left_[a] : right_[a];
            ++light;
            continue;
        }
        const node_t w = tdepth_[ei.node] >= tdepth_[ej.node] ? ei.node : ej.node;
        if (stats) {
            ++stats->descents;
            stats->light_edges += light;
            stats->max_light_per_descent = std::max(stats->max_light_per_descent, light);
        }
        return hit(w, value_at(u, acc, w), base + first_rank(u, w) + 1);
    }
}

HpdIndex::NodeHit HpdIndex::weighted_ancestor(std::uint64_t i, std::uint64_t j, std::int64_t k, int channel,
                                              QueryStats* stats) const {
    if (channel < 0 || channel >= channel_count()) throw std::out_of_range("channel out of range");
    NodeHit target = lca_map(i, j, stats);
    if (target.leaves != Interval{i, j}) throw std::invalid_argument("leaf range is not the interval of a node");
    if (target.value[channel] < k) throw std::domain_error("threshold unreachable");

    node_t u = root_;
    Values acc = identity();
    std::uint64_t base = 0;
    for (;;) {
        if (acc[channel] >= k) return hit(u, acc, base + 1);
        Exit e = find_exit(u, i - base, stats);
        const Values at_exit = value_at(u, acc, e.node);
        if (at_exit[channel] >= k) {
            // Highest node of the heavy segment u..exit reaching k: one step
            // above the highest node that stays below k.
            const node_t below = la_.highest(
                u, [&](node_t x) { return value_at(u, acc, x)[channel] < k; }, stats ? &stats->probes : nullptr);
            if (stats) ++stats->probes;
            const node_t b = la_.query(below, tdepth_[below] - 1);
            return hit(b, value_at(u, acc, b), base + first_rank(u, b) + 1);
        }
        if (e.side == kHeavyLeaf) throw std::logic_error("weighted ancestor walked past its target");
        base += first_rank(u, e.node) + (e.side == kRight ? nleaves_[left_[e.node]] : 0);
        acc = through(e.node, e.side, at_exit);
        u = e.side == kLeft ? left_[e.node] : right_[e.node];
    }
}

// ---------------------------------------------------------------------------

struct HpdIndex::Emit {
    std::vector<RangeLeaf>& out;
    QueryStats* stats;
};

void HpdIndex::emit_leaf(Emit& e, const Values& value, std::int64_t payload, std::optional<Values> join) const {
    e.out.push_back({value, join.value_or(Values{}), payload});
}

std::vector<node_t> HpdIndex::right_chain(node_t c, std::int64_t floor) const {
    std::vector<node_t> xs;
    for (node_t x = next_right_[c]; x != kNoNode && static_cast<std::int64_t>(tdepth_[x]) > floor;
         x = next_right_[tparent_[x]])
        xs.push_back(x);
    std::reverse(xs.begin(), xs.end());
    return xs;
}

void HpdIndex::emit_all(Emit& e, node_t c, const Values& acc, std::int64_t in_payload,
                        std::optional<Values> join) const {
    if (c == sink_) return emit_leaf(e, acc, in_payload, join);
    if (e.stats) ++e.stats->probes;
    for (node_t x = next_left_[c]; x != kNoNode; x = next_left_[tparent_[x]]) {
        Values vx = value_at(c, acc, x);
        emit_all(e, left_[x], through(x, kLeft, vx), left_payload_[x], join);
        join = vx;
    }
    emit_leaf(e, value_at(c, acc, sink_), heavy_payload_[c], join);
    for (node_t x : right_chain(c, -1)) {
        Values vx = value_at(c, acc, x);
        emit_all(e, right_[x], through(x, kRight, vx), right_payload_[x], vx);
    }
}

void HpdIndex::emit_from(Emit& e, node_t c, std::uint64_t r, const Values& acc, std::int64_t in_payload,
                         std::optional<Values> join) const {
    if (c == sink_ || r == 1) return emit_all(e, c, acc, in_payload, join);
    Exit ex = find_exit(c, r, e.stats);
    const node_t a = ex.node;
    if (ex.side == kLeft) {
        Values va = value_at(c, acc, a);
        emit_from(e, left_[a], ex.rank, through(a, kLeft, va), left_payload_[a], join);
        join = va;
        for (node_t x = next_left_[tparent_[a]]; x != kNoNode;
             x = next_left_[tparent_[x]]) {
            Values vx = value_at(c, acc, x);
            emit_all(e, left_[x], through(x, kLeft, vx), left_payload_[x], join);
            join = vx;
        }
        emit_leaf(e, value_at(c, acc, sink_), heavy_payload_[c], join);
    } else if (ex.side == kRight) {
        Values va = value_at(c, acc, a);
        emit_from(e, right_[a], ex.rank, through(a, kRight, va), right_payload_[a], join);
        for (node_t x : right_chain(c, tdepth_[a])) {
            Values vx = value_at(c, acc, x);
            emit_all(e, right_[x], through(x, kRight, vx), right_payload_[x], vx);
        }
        return;
    } else {
        emit_leaf(e, value_at(c, acc, sink_), heavy_payload_[c], join);
    }
    for (node_t x : right_chain(c, -1)) {
        Values vx = value_at(c, acc, x);
        emit_all(e, right_[x], through(x, kRight, vx), right_payload_[x], vx);
    }
}

void HpdIndex::emit_upto(Emit& e, node_t c, std::uint64_t r, const Values& acc, std::int64_t in_payload,
                         std::optional<Values> join) const {
    if (c == sink_ || r == nleaves_[c]) return emit_all(e, c, acc, in_payload, join);
    Exit ex = find_exit(c, r, e.stats);
    const node_t a = ex.node;
    // Left-light subtrees above the exit (all of them unless it is a left exit).
    for (node_t x = next_left_[c]; x != kNoNode; x = next_left_[tparent_[x]]) {
        if (ex.side == kLeft && tdepth_[x] <= tdepth_[a]) break;
        Values vx = value_at(c, acc, x);
        emit_all(e, left_[x], through(x, kLeft, vx), left_payload_[x], join);
        join = vx;
    }
    if (ex.side == kLeft) {
        Values va = value_at(c, acc, a);
        return emit_upto(e, left_[a], ex.rank, through(a, kLeft, va), left_payload_[a], join);
    }
    emit_leaf(e, value_at(c, acc, sink_), heavy_payload_[c], join);
    if (ex.side == kHeavyLeaf) return;
    for (node_t x : right_chain(tparent_[a], -1)) {
        Values vx = value_at(c, acc, x);
        emit_all(e, right_[x], through(x, kRight, vx), right_payload_[x], vx);
    }
    Values va = value_at(c, acc, a);
    emit_upto(e, right_[a], ex.rank, through(a, kRight, va), right_payload_[a], va);
}

std::vector<HpdIndex::RangeLeaf> HpdIndex::range_eval(std::uint64_t i, std::uint64_t j, QueryStats* stats) const {
    check_leaf(i);
    check_leaf(j);
    if (i > j) throw std::invalid_argument("leaf range is empty");
    std::vector<RangeLeaf> out;
    out.reserve(j - i + 1);
    if (i == j) {
        Leaf l = leaf_eval(i, stats);
        out.push_back({l.value, Values{}, l.payload});
        return out;
    }
    node_t u = root_;
    Values acc = identity();
    std::uint64_t base = 0;
    for (;;) {
        Exit ei = find_exit(u, i - base, stats);
        Exit ej = find_exit(u, j - base, stats);
        if (ei.node == ej.node && ei.side == ej.side) {
            const node_t a = ei.node;
            base += first_rank(u, a) + (ei.side == kRight ? nleaves_[left_[a]] : 0);
            acc = through(a, ei.side, value_at(u, acc, a));
            u = ei.side == kLeft ? left_[a] : right_[a];
            continue;
        }
        const node_t w = tdepth_[ei.node] >= tdepth_[ej.node] ? ei.node : ej.node;
        const Values vw = value_at(u, acc, w);
        const std::uint64_t bw = base + first_rank(u, w);
        Emit e{out, stats};
        emit_from(e, left_[w], i - bw, through(w, kLeft, vw), left_payload_[w], std::nullopt);
        emit_upto(e, right_[w], j - bw - nleaves_[left_[w]], through(w, kRight, vw), right_payload_[w], vw);
        return out;
    }
}

std::uint64_t HpdIndex::max_light_depth() const {
    std::vector<std::uint64_t> best(left_.size(), 0);
    std::vector<bool> done(left_.size(), false);
    std::vector<node_t> stack{root_};
    while (!stack.empty()) {
        node_t x = stack.back();
        if (x == sink_ || done[x]) {
            done[x] = true;
            stack.pop_back();
            continue;
        }
        bool ready = true;
        for (node_t c : {left_[x], right_[x]})
            if (!done[c]) {
                stack.push_back(c);
                ready = false;
            }
        if (!ready) continue;
        const std::uint64_t l = best[left_[x]] + (heavy_[x] == kLeft ? 0 : 1);
        const std::uint64_t r = best[right_[x]] + (heavy_[x] == kRight ? 0 : 1);
        best[x] = std::max(l, r);
        done[x] = true;
        stack.pop_back();
    }
    return best[root_];
}

// ---------------------------------------------------------------------------

namespace {

void put_values(ByteWriter& w, const std::vector<Values>& v, std::size_t channels) {
    w.u64(v.size());
    for (const auto& x : v)
        for (std::size_t c = 0; c < channels; ++c) w.i64(x[c]);
}

std::vector<Values> get_values(ByteReader& r, std::size_t channels) {
    std::uint64_t len = r.u64();
    if (len > r.remaining() / (8 * channels)) throw format_error("hpd: bad value table");
    std::vector<Values> v(len, Values{});
    for (auto& x : v)
        for (std::size_t c = 0; c < channels; ++c) x[c] = r.i64();
    return v;
}

}  // namespace

void HpdIndex::save(ByteWriter& w) const {
    w.u8(static_cast<std::uint8_t>(fns_.size()));
    for (const auto& f : fns_) w.u8(f.id);
    w.u32(root_);
    w.u32(sink_);
    w.vec_u32(left_);
    w.vec_u32(right_);
    put_values(w, left_f_, fns_.size());
    put_values(w, right_f_, fns_.size());
    w.vec_i64(left_payload_);
    w.vec_i64(right_payload_);
    w.vec_u32(real_);
    w.vec_u64(real_offset_);
    w.vec_u64(nleaves_);
    w.vec_u8(heavy_);
    w.vec_u32(tparent_);
    w.vec_u32(tdepth_);
    put_values(w, count_, fns_.size());
    w.vec_u64(lcnt_);
    w.vec_u64(rcnt_);
    w.vec_i64(heavy_payload_);
    w.vec_u32(next_left_);
    w.vec_u32(next_right_);
}

HpdIndex HpdIndex::load(ByteReader& r, LaKind la) {
    HpdIndex h;
    const std::uint8_t channels = r.u8();
    if (channels < 1 || channels > kMaxChannels) throw format_error("hpd: bad channel count");
    for (int c = 0; c < channels; ++c) h.fns_.push_back(Telescoping::by_id(r.u8()));
    h.root_ = r.u32();
    h.sink_ = r.u32();
    h.left_ = r.vec_u32();
    h.right_ = r.vec_u32();
    h.left_f_ = get_values(r, channels);
    h.right_f_ = get_values(r, channels);
    h.left_payload_ = r.vec_i64();
    h.right_payload_ = r.vec_i64();
    h.real_ = r.vec_u32();
    h.real_offset_ = r.vec_u64();
    h.nleaves_ = r.vec_u64();
    h.heavy_ = r.vec_u8();
    h.tparent_ = r.vec_u32();
    h.tdepth_ = r.vec_u32();
    h.count_ = get_values(r, channels);
    h.lcnt_ = r.vec_u64();
    h.rcnt_ = r.vec_u64();
    h.heavy_payload_ = r.vec_i64();
    h.next_left_ = r.vec_u32();
    h.next_right_ = r.vec_u32();

    const std::size_t n = h.left_.size();
    for (std::size_t len : {h.right_.size(), h.left_f_.size(), h.right_f_.size(), h.left_payload_.size(),
                            h.right_payload_.size(), h.real_.size(), h.real_offset_.size(), h.nleaves_.size(),
                            h.heavy_.size(), h.tparent_.size(), h.tdepth_.size(), h.count_.size(), h.lcnt_.size(),
                            h.rcnt_.size(), h.heavy_payload_.size(), h.next_left_.size(), h.next_right_.size()})
        if (len != n) throw format_error("hpd: table sizes differ");
    if (h.root_ >= n || h.sink_ >= n) throw format_error("hpd: bad root or sink");
    auto ok = [&](node_t x) { return x == kNoNode || x < n; };
    for (std::size_t x = 0; x < n; ++x) {
        if (!ok(h.left_[x]) || !ok(h.right_[x]) || !ok(h.tparent_[x]) || !ok(h.next_left_[x]) ||
            !ok(h.next_right_[x]) || h.real_[x] >= n || h.heavy_[x] > 1)
            throw format_error("hpd: bad node reference");
        if (x != h.sink_ && (h.left_[x] == kNoNode || h.right_[x] == kNoNode || h.tparent_[x] == kNoNode ||
                             h.tdepth_[x] != h.tdepth_[h.tparent_[x]] + 1))
            throw format_error("hpd: inconsistent spanning tree");
    }
    if (h.tparent_[h.sink_] != kNoNode || h.tdepth_[h.sink_] != 0) throw format_error("hpd: bad sink");
    h.la_ = LevelAncestor(h.tparent_, h.tdepth_, la);
    return h;
}

bool HpdIndex::same_data(const HpdIndex& o) const {
    if (fns_.size() != o.fns_.size()) return false;
    for (std::size_t c = 0; c < fns_.size(); ++c)
        if (fns_[c].id != o.fns_[c].id) return false;
    return root_ == o.root_ && sink_ == o.sink_ && left_ == o.left_ && right_ == o.right_ &&
           left_f_ == o.left_f_ && right_f_ == o.right_f_ && left_payload_ == o.left_payload_ &&
           right_payload_ == o.right_payload_ && real_ == o.real_ && real_offset_ == o.real_offset_ &&
           nleaves_ == o.nleaves_ && heavy_ == o.heavy_ && tparent_ == o.tparent_ && tdepth_ == o.tdepth_ &&
           count_ == o.count_ && lcnt_ == o.lcnt_ && rcnt_ == o.rcnt_ && heavy_payload_ == o.heavy_payload_ &&
           next_left_ == o.next_left_ && next_right_ == o.next_right_;
}

}  // namespace cdawgst
