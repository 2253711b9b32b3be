#include <doctest.h>

#include <bit>
#include <random>

#include "cdawgst/hpd.hpp"
#include "cdawgst/serialize.hpp"
#include "support/brute_tree.hpp"

using namespace cdawgst;
using cdawgst::testing::BruteTree;

namespace {

Values w1(std::int64_t x) { return Values{x, 0, 0, 0}; }

// s -> m twice (weights 0, 2), m -> t twice (weights 0, 1).
OrderedDag four_leaves() {
    OrderedDag g(3);
    g.add_arc(0, 1, w1(0));
    g.add_arc(0, 1, w1(2));
    g.add_arc(1, 2, w1(0), 7);
    g.add_arc(1, 2, w1(1), 8);
    return g;
}

void compare_with_brute(const OrderedDag& g, const std::vector<Telescoping>& fns, LaKind la) {
    HpdIndex h(g, fns, la);
    BruteTree t(g, fns);
    const std::uint64_t n = t.leaves();
    REQUIRE(h.leaf_count() == n);
    const int channels = static_cast<int>(fns.size());
    const auto light_cap = static_cast<std::uint64_t>(std::bit_width(n));  // floor(log2 n) + 1

    for (std::uint64_t i = 1; i <= n; ++i) {
        QueryStats st;
        auto leaf = h.leaf_eval(i, &st);
        CHECK(leaf.value == t.leaf(i).value);
        CHECK(leaf.payload == t.leaf(i).payload);
        CHECK(st.max_light_per_descent <= light_cap);
    }
    for (std::uint64_t i = 1; i <= n; ++i)
        for (std::uint64_t j = i; j <= n; ++j) {
            auto got = h.lca_map(i, j);
            const auto& want = t.node(t.lca(i, j));
            CHECK(got.node == want.dag_node);
            CHECK(got.value == want.value);
            CHECK(got.leaves == Interval{want.lo, want.hi});

            auto range = h.range_eval(i, j);
            REQUIRE(range.size() == j - i + 1);
            for (std::uint64_t k = i; k <= j; ++k) {
                CHECK(range[k - i].value == t.leaf(k).value);
                CHECK(range[k - i].payload == t.leaf(k).payload);
                if (k > i) CHECK(range[k - i].join == t.node(t.lca(k - 1, k)).value);
            }
        }
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& x = t.node(k);
        for (int ch = 0; ch < channels; ++ch)
            for (std::int64_t thr = -1; thr <= x.value[ch] + 1; ++thr) {
                auto want = t.weighted_ancestor(k, thr, ch);
                if (want < 0) {
                    CHECK_THROWS_AS(h.weighted_ancestor(x.lo, x.hi, thr, ch), std::domain_error);
                    continue;
                }
                auto got = h.weighted_ancestor(x.lo, x.hi, thr, ch);
                const auto& w = t.node(static_cast<std::size_t>(want));
                CHECK(got.node == w.dag_node);
                CHECK(got.value == w.value);
                CHECK(got.leaves == Interval{w.lo, w.hi});
            }
    }
}

}  // namespace

TEST_CASE("two leaves") {
    OrderedDag g(2);
    g.add_arc(0, 1, w1(0));
    g.add_arc(0, 1, w1(1));
    HpdIndex h(g, {Telescoping::sum});
    CHECK(h.leaf_count() == 2);
    CHECK(h.leaf_eval(2).value[0] == 1);
    CHECK_THROWS_AS(h.leaf_eval(3), std::out_of_range);
    CHECK_THROWS_AS(h.leaf_eval(0), std::out_of_range);
}

TEST_CASE("four leaves") {
    HpdIndex h(four_leaves(), {Telescoping::sum});
    CHECK(h.leaf_count() == 4);
    CHECK(h.leaf_eval(3).value[0] == 2);
    auto range = h.range_eval(1, 4);
    REQUIRE(range.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(range[k].value[0] == k);
    CHECK(range[1].payload == 8);

    auto m = h.lca_map(1, 2);
    CHECK(m.node == 1);
    CHECK(m.value[0] == 0);
    CHECK(m.leaves == Interval{1, 2});

    auto root = h.lca_map(1, 4);
    CHECK(root.node == 0);
    CHECK(root.value[0] == 0);
    CHECK(root.leaves == Interval{1, 4});

    auto leaf = h.lca_map(3, 3);
    CHECK(leaf.node == 2);
    CHECK(leaf.leaves == Interval{3, 3});

    auto wa = h.weighted_ancestor(3, 3, 2, 0);
    CHECK(wa.node == 1);
    CHECK(wa.value[0] == 2);
    CHECK(wa.leaves == Interval{3, 4});

    CHECK(h.weighted_ancestor(3, 3, 0, 0).node == 0);
    CHECK_THROWS_WITH(h.weighted_ancestor(3, 3, 3, 0), "threshold unreachable");
    CHECK_THROWS_AS(h.weighted_ancestor(2, 3, 0, 0), std::invalid_argument);
}

TEST_CASE("rejects unary nodes and cycles") {
    OrderedDag unary(3);
    unary.add_arc(0, 1, w1(0));
    unary.add_arc(0, 1, w1(1));
    unary.add_arc(1, 2, w1(0));
    CHECK_THROWS_WITH(HpdIndex(unary, {Telescoping::sum}), "collapse required");

    OrderedDag cyclic(3);
    cyclic.add_arc(0, 1, w1(0));
    cyclic.add_arc(1, 2, w1(0));
    cyclic.add_arc(2, 1, w1(0));
    CHECK_THROWS_AS(HpdIndex(cyclic, {Telescoping::sum}), std::invalid_argument);
}

TEST_CASE("random dags agree with the expanded tree") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 60; ++round) {
        auto g = cdawgst::testing::random_dag(rng, 8, 16, 8, 2);
        CAPTURE(round);
        compare_with_brute(g, {Telescoping::sum, Telescoping::unit},
                           round % 2 ? LaKind::path_ladder : LaKind::binary_lifting);
    }
}

TEST_CASE("tree generated by a dag minimizes back to the dag") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        auto g = cdawgst::testing::random_dag(rng, 8, 16, 3);
        BruteTree t(g, {Telescoping::sum});
        CHECK(cdawgst::testing::canonical_form(t) == cdawgst::testing::canonical_form(g));
    }
}

TEST_CASE("smooth leaf labels come back through the payload") {
    // Every leaf is labelled by the payload of its sink arc, so the label
    // array of a subtree depends only on the node that generates it.
    auto g = four_leaves();
    HpdIndex h(g, {Telescoping::unit});
    std::vector<std::int64_t> labels;
    for (const auto& leaf : h.range_eval(1, 4)) labels.push_back(leaf.payload);
    CHECK(labels == std::vector<std::int64_t>{7, 8, 7, 8});
}

TEST_CASE("serialization round trip") {
    std::mt19937_64 rng(3);
    auto g = cdawgst::testing::random_dag(rng, 8, 16, 8, 2);
    HpdIndex h(g, {Telescoping::sum, Telescoping::unit});
    ByteWriter w;
    h.save(w);
    ByteReader r(w.data());
    auto back = HpdIndex::load(r, LaKind::path_ladder);
    r.expect_end("hpd");
    CHECK(back.same_data(h));
    ByteWriter again;
    back.save(again);
    CHECK(again.data() == w.data());
    for (std::uint64_t i = 1; i <= h.leaf_count(); ++i) CHECK(back.leaf_eval(i).value == h.leaf_eval(i).value);

    std::string bad = w.data();
    bad.resize(bad.size() / 2);
    ByteReader short_reader(bad);
    CHECK_THROWS_AS(HpdIndex::load(short_reader), format_error);
}

TEST_CASE("level ancestor variants agree") {
    // A caterpillar and a random tree.
    std::mt19937_64 rng(5);
    const node_t n = 300;
    std::vector<node_t> parent(n, kNoNode);
    std::vector<std::uint32_t> depth(n, 0);
    for (node_t u = 1; u < n; ++u) {
        parent[u] = std::uniform_int_distribution<node_t>(u > 20 ? u - 20 : 0, u - 1)(rng);
        depth[u] = depth[parent[u]] + 1;
    }
    LevelAncestor a(parent, depth, LaKind::binary_lifting);
    LevelAncestor b(parent, depth, LaKind::path_ladder);
    for (node_t u = 0; u < n; ++u)
        for (std::uint32_t d = 0; d <= depth[u]; ++d) {
            node_t x = u;
            while (depth[x] > d) x = parent[x];
            CHECK(a.query(u, d) == x);
            CHECK(b.query(u, d) == x);
        }
    CHECK(b.words() < a.words());
}
