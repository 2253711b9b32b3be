#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdawgst/common.hpp"

namespace cdawgst {

/// The indexed string T[1..n] over dense codes [1..sigma], with T[n] = 0 the
/// terminal. The terminal never occurs elsewhere.
class Text {
public:
    Text() = default;

    pos_t size() const { return symbols_.size(); }
    symbol_t sigma() const { return sigma_; }

    /// 1-based access.
    symbol_t operator[](pos_t i) const { return symbols_[i - 1]; }
    std::span<const symbol_t> symbols() const { return symbols_; }

    /// Original byte for a code in [1..sigma].
    std::uint8_t byte_of(symbol_t code) const { return code_to_byte_.at(code - 1); }
    /// Code for an original byte, or nullopt if the byte does not occur.
    std::optional<symbol_t> code_of(std::uint8_t byte) const;
    const std::vector<std::uint8_t>& alphabet() const { return code_to_byte_; }

    /// Renders codes back to bytes; the terminal is shown as `terminal`.
    std::string decode(std::span<const symbol_t> codes, char terminal = '#') const;

    static Text from_parts(std::vector<symbol_t> symbols, std::vector<std::uint8_t> alphabet);

private:
    friend Text normalize(std::span<const std::uint8_t> raw);

    std::vector<symbol_t> symbols_;
    symbol_t sigma_ = 0;
    std::vector<std::uint8_t> code_to_byte_;
};

/// Remaps the distinct bytes of `raw` to dense codes 1..sigma (order
/// preserving) and appends the terminal. Throws std::invalid_argument on an
/// empty input.
Text normalize(std::span<const std::uint8_t> raw);
Text normalize(std::string_view raw);

/// Explicit suffix tree node used by the oracle.
struct OracleNode {
    pos_t depth = 0;   // string depth
    pos_t sp = 0;      // leaf interval, 1-based ranks
    pos_t ep = 0;
    node_t parent = kNoNode;
    node_t slink = kNoNode;
    pos_t tree_depth = 0;
    node_t class_rep = kNoNode;  // longest node with the same end-position set
    std::vector<node_t> children;

    bool is_leaf() const { return children.empty(); }
};

/// Brute-force full-text index. Construction sorts suffixes by direct
/// comparison and is meant for verification at small scale only.
class OracleIndex {
public:
    explicit OracleIndex(const Text& text);

    const Text& text() const { return text_; }
    pos_t size() const { return n_; }

    // 1-based arrays; index 0 is unused.
    std::vector<pos_t> sa, isa, lcp, plcp;
    std::vector<symbol_t> bwt;
    // C[c] = number of symbols smaller than c; size sigma + 2.
    std::vector<pos_t> C;

    // nodes[0] is the root; leaf_of_rank[r] is the leaf of the r-th suffix.
    std::vector<OracleNode> nodes;
    std::vector<node_t> leaf_of_rank;

    node_t root() const { return 0; }

    /// BWT interval of a pattern, or nullopt when it does not occur.
    std::optional<Interval> find(std::span<const symbol_t> pattern) const;

    /// Lowest common ancestor by walking parent pointers.
    node_t lca(node_t a, node_t b) const;
    /// Locus of an interval: the highest node whose leaves are exactly it.
    node_t locus(Interval iv) const;
    /// First character of the edge entering `child`.
    symbol_t edge_char(node_t child) const;
    /// Substring T[pos..pos+len-1].
    std::vector<symbol_t> substring(pos_t pos, pos_t len) const;

private:
    void build_tree();
    void link_tree();

    Text text_;
    pos_t n_;
};

/// Maximal repeats of T (left extensions read T circularly), by brute force
/// over all substrings. Includes the empty string.
std::set<std::vector<symbol_t>> maximal_repeats(const Text& text);

}  // namespace cdawgst
