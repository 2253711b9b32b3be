#pragma once

#include <span>
#include <vector>

#include "cdawgst/common.hpp"

namespace cdawgst {

class ByteWriter;
class ByteReader;

struct Run {
    symbol_t ch;
    pos_t start;  // 1-based, inclusive
    pos_t end;
};

/// Run-length encoded BWT with rank/select by binary search over runs,
/// O(log |R|) per query and O(|R| + sigma) words.
class Rlbwt {
public:
    Rlbwt() = default;
    /// `bwt` is the 1-based BWT stored 0-based (bwt[0] is BWT[1]).
    Rlbwt(std::span<const symbol_t> bwt, symbol_t sigma);

    pos_t size() const { return n_; }
    symbol_t sigma() const { return sigma_; }
    std::size_t runs() const { return run_start_.size(); }
    Run run(std::size_t k) const;

    symbol_t access(pos_t i) const;
    /// Occurrences of c in BWT[1..i]; rank(c, 0) = 0. Throws for i > n.
    pos_t rank(symbol_t c, pos_t i) const;
    /// Position of the k-th c. Throws unless 1 <= k <= count(c).
    pos_t select(symbol_t c, pos_t k) const;
    pos_t count(symbol_t c) const;

    void save(ByteWriter& w) const;
    static Rlbwt load(ByteReader& r);

    friend bool operator==(const Rlbwt& a, const Rlbwt& b) {
        return a.n_ == b.n_ && a.sigma_ == b.sigma_ && a.run_start_ == b.run_start_ &&
               a.run_char_ == b.run_char_;
    }

private:
    void index_runs();
    std::size_t run_of(pos_t i) const;

    pos_t n_ = 0;
    symbol_t sigma_ = 0;
    std::vector<pos_t> run_start_;
    std::vector<symbol_t> run_char_;
    // Per character: indices of its runs and occurrences before each run.
    std::vector<std::vector<std::uint32_t>> runs_of_;
    std::vector<std::vector<pos_t>> before_;
};

}  // namespace cdawgst
