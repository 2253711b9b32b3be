#include "cdawgst/bench.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace cdawgst {

double BenchRow::bound(double c) const {
    const double l = std::log2(static_cast<double>(n));
    return c * l * l;
}

bool BenchRow::within(double c) const {
    for (auto m : max)
        if (static_cast<double>(m) > bound(c)) return false;
    return true;
}

BenchRow measure(const Cst& cst, std::uint64_t queries, std::uint64_t seed) {
    BenchRow row;
    row.n = cst.size();
    row.arcs = cst.cdawg().arc_count();
    row.grammar = cst.grammar().grammar_size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<pos_t> pos(1, row.n);
    for (int op = 0; op < 4; ++op) {
        std::uint64_t total = 0;
        for (std::uint64_t q = 0; q < queries; ++q) {
            QueryStats st;
            switch (static_cast<BenchOp>(op)) {
                case BenchOp::select_leaf: (void)cst.select_leaf(pos(rng), &st); break;
                case BenchOp::isa: (void)cst.isa(pos(rng), &st); break;
                case BenchOp::lca: {
                    pos_t i = pos(rng), j = pos(rng);
                    (void)cst.lca(std::min(i, j), std::max(i, j), &st);
                    break;
                }
                case BenchOp::str_ancestor: {
                    NodeId leaf = cst.select_leaf(pos(rng));
                    pos_t d = std::uniform_int_distribution<pos_t>(0, leaf.depth)(rng);
                    (void)cst.str_ancestor(leaf, d, &st);
                    break;
                }
            }
            total += st.probes;
            row.max[op] = std::max(row.max[op], st.probes);
            row.max_light = std::max(row.max_light, st.max_light_per_descent);
        }
        row.mean[op] = queries ? static_cast<double>(total) / static_cast<double>(queries) : 0.0;
    }
    return row;
}

std::vector<BenchRow> bench_prefixes(const std::string& raw, Mode mode, std::uint64_t queries, std::uint64_t seed,
                                     pos_t min_n) {
    std::vector<BenchRow> rows;
    for (pos_t n = std::bit_ceil(std::max<pos_t>(min_n, 2)); n - 1 <= raw.size(); n *= 2) {
        Cst cst = Cst::build(normalize(std::string_view(raw).substr(0, n - 1)), mode);
        rows.push_back(measure(cst, queries, seed));
    }
    return rows;
}

std::string fibonacci_word(std::size_t len) {
    std::string a = "a", b = "ab";
    while (b.size() < len) {
        std::string c = b + a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

}  // namespace cdawgst
