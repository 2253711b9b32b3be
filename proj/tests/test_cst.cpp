#include <doctest.h>

#include <random>

#include "cdawgst/cst.hpp"
#include "cdawgst/verify.hpp"

using namespace cdawgst;

namespace {

const char* kFig = "AGAGCGAGAGCGCGC";

std::string first_mismatch(const Report& r) { return r.ok() ? "" : format_mismatch(r.mismatches.front()); }

}  // namespace

TEST_CASE("figure text examples") {
    for (Mode mode : {Mode::full, Mode::lite}) {
        CAPTURE(to_string(mode));
        auto cst = Cst::build(normalize(kFig), mode);
        CHECK(cst.size() == 16);
        CHECK(cst.select_leaf(2).depth == 16);
        CHECK(cst.sa(2) == 1);
        CHECK(cst.isa(1) == 2);
        CHECK(cst.isa(16) == 1);
        CHECK(cst.sa(1) == 16);
        CHECK(cst.lca(2, 3).depth == 6);
        CHECK(cst.internal_pattern_match(1, 2) == std::vector<pos_t>{1, 3, 7, 9});
        CHECK(cst.extract(1, 4) == std::vector<symbol_t>{1, 3, 1, 3});
        CHECK(cst.extract(16, 16) == std::vector<symbol_t>{0});
        CHECK(cst.n_leaves(cst.root()) == 16);
        CHECK(cst.lcp(1, 1) == std::vector<pos_t>{0});
        CHECK(cst.ancestor(cst.select_leaf(5), 0) == cst.root());
        CHECK(cst.leftmost_leaf(cst.root()) == cst.select_leaf(1));
        CHECK_FALSE(cst.parent(cst.root()).has_value());
        CHECK(cst.lce(3, 3) == 14);
    }
}

TEST_CASE("small examples") {
    auto ab = Cst::build(normalize("AB"));
    CHECK(ab.select_leaf(1).depth == 1);
    CHECK(ab.sa(1, 1) == std::vector<pos_t>{3});
    auto aa = Cst::build(normalize("AA"));
    CHECK(aa.lcp(1, 3) == std::vector<pos_t>{0, 0, 1});
}

TEST_CASE("errors") {
    auto full = Cst::build(normalize(kFig));
    auto lite = Cst::build(normalize(kFig), Mode::lite);
    CHECK_THROWS_AS(full.select_leaf(0), std::out_of_range);
    CHECK_THROWS_AS(full.sa(17), std::out_of_range);
    CHECK_THROWS_AS(full.internal_pattern_match(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(lite.weiner_link(lite.root(), 1), unsupported_error);
    CHECK_THROWS_AS(full.str_ancestor(full.lca(2, 3), 7), std::domain_error);
    CHECK_FALSE(full.child(full.select_leaf(3), 1).has_value());
    CHECK_THROWS_AS(full.check(NodeId{0, 3, 1, 16}), std::invalid_argument);
    CHECK_THROWS_AS(lite.check(NodeId{0, 0, 1, 16}), std::invalid_argument);
}

TEST_CASE("navigation round trips") {
    auto cst = Cst::build(normalize(kFig));
    std::vector<NodeId> stack{cst.root()};
    int nodes = 0;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        ++nodes;
        if (v != cst.root()) {
            CHECK(cst.suffix_link_iter(v, 1) == *cst.suffix_link(v));
            // cW <- W: the suffix link followed by the dropped character.
            auto s = cst.suffix_link(v);
            auto back = cst.weiner_link(*s, cst.letter(v, 1));
            REQUIRE(back.has_value());
            CHECK(back->node == v.node);
            CHECK(cst.is_ancestor(*back, v));
            CHECK(back->depth == v.depth);
        }
        if (cst.is_leaf(v)) CHECK(cst.leaf_rank(v) == v.lo);
        for (auto c = cst.first_child(v); c; c = cst.next_sibling(*c)) {
            CHECK(*cst.parent(*c) == v);
            stack.push_back(*c);
        }
    }
    CHECK(nodes == static_cast<int>(OracleIndex(normalize(kFig)).nodes.size()));
}

TEST_CASE("oracle equivalence on small and random texts") {
    for (const char* s : {"A", "AB", "AA", "ABA", "AAAA", "ABAB", "ABCABC", "BANANA", "MISSISSIPPI", kFig}) {
        CAPTURE(s);
        auto r = verify_text(normalize(s));
        CHECK_MESSAGE(r.ok(), first_mismatch(r));
        auto q = verify_text(normalize(s), {}, LaKind::path_ladder);
        CHECK_MESSAGE(q.ok(), first_mismatch(q));
    }
    std::mt19937_64 rng(7);
    VerifyOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 200;
    for (int k = 0; k < 20; ++k) {
        std::string s(1 + rng() % 80, 'A');
        for (auto& c : s) c = static_cast<char>('A' + rng() % (1 + k % 4));
        CAPTURE(s);
        auto r = verify_text(normalize(s), sampled);
        CHECK_MESSAGE(r.ok(), first_mismatch(r));
    }
}
