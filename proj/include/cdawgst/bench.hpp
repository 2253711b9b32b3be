#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cdawgst/cst.hpp"

namespace cdawgst {

enum class BenchOp { select_leaf = 0, isa = 1, lca = 2, str_ancestor = 3 };
inline constexpr std::array<const char*, 4> kBenchOpNames{"selectLeaf", "isa", "lca", "strAncestor"};

struct BenchRow {
    pos_t n = 0;
    std::size_t arcs = 0;           // e_T
    std::size_t grammar = 0;        // reversed grammar size
    std::array<double, 4> mean{};   // probes per query, by BenchOp
    std::array<std::uint64_t, 4> max{};
    std::uint64_t max_light = 0;    // light edges in a single descent

    double bound(double c) const;   // c * log2(n)^2
    bool within(double c) const;    // every query of every op below the bound
};

/// Probe counts of `queries` random arguments per operation.
BenchRow measure(const Cst& cst, std::uint64_t queries, std::uint64_t seed);

/// Rows for prefixes of `raw` with n = 2, 4, 8, ... (n counts the terminal).
std::vector<BenchRow> bench_prefixes(const std::string& raw, Mode mode, std::uint64_t queries, std::uint64_t seed,
                                     pos_t min_n = 2);

/// The Fibonacci word of at least `len` characters over {a, b}.
std::string fibonacci_word(std::size_t len);

}  // namespace cdawgst
