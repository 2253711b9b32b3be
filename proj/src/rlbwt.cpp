#include "cdawgst/rlbwt.hpp"

#include <algorithm>

#include "cdawgst/serialize.hpp"

namespace cdawgst {

Rlbwt::Rlbwt(std::span<const symbol_t> bwt, symbol_t sigma) : n_(bwt.size()), sigma_(sigma) {
    for (pos_t i = 0; i < bwt.size(); ++i) {
        if (bwt[i] > sigma) throw std::invalid_argument("bwt symbol out of range");
        if (i == 0 || bwt[i] != bwt[i - 1]) {
            run_start_.push_back(i + 1);
            run_char_.push_back(bwt[i]);
        }
    }
    index_runs();
}

void Rlbwt::index_runs() {
    runs_of_.assign(sigma_ + 1, {});
    before_.assign(sigma_ + 1, {});
    std::vector<pos_t> seen(sigma_ + 1, 0);
    for (std::size_t k = 0; k < run_start_.size(); ++k) {
        symbol_t c = run_char_[k];
        runs_of_[c].push_back(static_cast<std::uint32_t>(k));
        before_[c].push_back(seen[c]);
        seen[c] += run(k).end - run_start_[k] + 1;
    }
    for (symbol_t c = 0; c <= sigma_; ++c) before_[c].push_back(seen[c]);
}

Run Rlbwt::run(std::size_t k) const {
    pos_t end = k + 1 < run_start_.size() ? run_start_[k + 1] - 1 : n_;
    return {run_char_[k], run_start_[k], end};
}

std::size_t Rlbwt::run_of(pos_t i) const {
    auto it = std::upper_bound(run_start_.begin(), run_start_.end(), i);
    return static_cast<std::size_t>(it - run_start_.begin()) - 1;
}

symbol_t Rlbwt::access(pos_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("bwt position out of range");
    return run_char_[run_of(i)];
}

pos_t Rlbwt::count(symbol_t c) const {
    if (c > sigma_) throw std::out_of_range("symbol out of range");
    return before_[c].back();
}

pos_t Rlbwt::rank(symbol_t c, pos_t i) const {
    if (c > sigma_) throw std::out_of_range("symbol out of range");
    if (i > n_) throw std::out_of_range("rank position out of range");
    if (i == 0) return 0;
    const auto& runs = runs_of_[c];
    // Last run of c starting at or before i.
    auto it = std::upper_bound(runs.begin(), runs.end(), i,
                               [&](pos_t pos, std::uint32_t k) { return pos < run_start_[k]; });
    if (it == runs.begin()) return 0;
    std::size_t idx = static_cast<std::size_t>(it - runs.begin()) - 1;
    Run r = run(runs[idx]);
    return before_[c][idx] + std::min(i, r.end) - r.start + 1;
}

pos_t Rlbwt::select(symbol_t c, pos_t k) const {
    if (c > sigma_) throw std::out_of_range("symbol out of range");
    if (k < 1 || k > count(c)) throw std::out_of_range("select rank out of range");
    const auto& before = before_[c];
    // Last run whose preceding count is < k.
    auto it = std::lower_bound(before.begin(), before.end() - 1, k);
    std::size_t idx = static_cast<std::size_t>(it - before.begin()) - 1;
    return run_start_[runs_of_[c][idx]] + (k - before[idx]) - 1;
}

void Rlbwt::save(ByteWriter& w) const {
    w.u64(n_);
    w.u32(sigma_);
    w.vec_u64(run_start_);
    w.vec_u32(run_char_);
}

Rlbwt Rlbwt::load(ByteReader& r) {
    Rlbwt b;
    b.n_ = r.u64();
    b.sigma_ = r.u32();
    b.run_start_ = r.vec_u64();
    b.run_char_ = r.vec_u32();
    if (b.run_start_.size() != b.run_char_.size()) throw format_error("rlbwt: run table mismatch");
    for (std::size_t k = 0; k < b.run_start_.size(); ++k) {
        if (b.run_char_[k] > b.sigma_) throw format_error("rlbwt: symbol out of range");
        pos_t prev = k == 0 ? 0 : b.run_start_[k - 1];
        if (b.run_start_[k] <= prev || b.run_start_[k] > b.n_) throw format_error("rlbwt: bad run start");
    }
    if (!b.run_start_.empty() && b.run_start_[0] != 1) throw format_error("rlbwt: bad first run");
    b.index_runs();
    return b;
}

}  // namespace cdawgst
