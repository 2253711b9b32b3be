// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "cdawgst/bench.hpp"
#include "cdawgst/index_file.hpp"
#include "cdawgst/verify.hpp"
#include "support/brute_tree.hpp"

using namespace cdawgst;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr double kProbeConstant = 8.0;  // fixed before the run

struct Tally {
    Report ops, structure, serialization;
    std::uint64_t texts = 0;

    void merge(const Tally& o) {
        ops.merge(o.ops);
        structure.merge(o.structure);
        serialization.merge(o.serialization);
        texts += o.texts;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string first(const Report& r) { return r.ok() ? "" : " first: " + format_mismatch(r.mismatches.front()); }

void line(bool ok, int k, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", k, what.c_str());
    std::fflush(stdout);
}

void serialization_check(const Cst& cst, const OracleIndex* o, Report& r, const std::string& label) {
    ++r.checks;
    try {
        const std::string bytes = save_index(cst);
        // Loaded with the ladder, whatever the build used.
        const Cst back = load_index(bytes, LaKind::path_ladder);
        const bool same = save_index(back) == bytes && back.cdawg() == cst.cdawg() && back.grammar() == cst.grammar() &&
                          back.forward_hpd().same_data(cst.forward_hpd()) &&
                          back.reverse_hpd().same_data(cst.reverse_hpd());
        if (!same) r.mismatches.push_back({"resave", label, "identical bytes", "different"});
        if (o) r.merge(verify_operations(back, *o, VerifyOptions{false, 200, kSeed, 1}));
    } catch (const std::exception& e) {
        r.mismatches.push_back({"load", label, "a loaded index", e.what()});
    }
}

// Text, both modes, every check. Parity is sampled: each mode already
// matches the oracle on every argument.
void check_text(const std::string& s, const VerifyOptions& opt, bool verify_loaded, Tally& t) {
    const OracleIndex o(normalize(s));
    const LaKind la = s.size() % 2 ? LaKind::path_ladder : LaKind::binary_lifting;
    const Cst full = Cst::build(o, Mode::full, la);
    const Cst lite = Cst::build(o, Mode::lite, la);
    auto add = [&](Report& into, const Report& r) {
        into.checks += r.checks;
        for (auto m : r.mismatches) {
            m.op += " text=" + s;
            into.mismatches.push_back(std::move(m));
        }
    };
    add(t.structure, verify_structure(full, o, opt));
    add(t.ops, verify_operations(full, o, opt));
    add(t.ops, verify_operations(lite, o, opt));
    VerifyOptions sampled = opt;
    sampled.exhaustive = false;
    sampled.samples = std::min<std::uint64_t>(opt.samples, 32);
    add(t.ops, verify_parity(full, lite, sampled));
    Report ser;
    serialization_check(full, verify_loaded ? &o : nullptr, ser, s);
    serialization_check(lite, verify_loaded ? &o : nullptr, ser, s);
    add(t.serialization, ser);
    ++t.texts;
}

std::string decode(std::uint64_t code, int len) {
    std::string s(static_cast<std::size_t>(len), 'a');
    for (int k = 0; k < len; ++k, code /= 3) s[static_cast<std::size_t>(k)] = static_cast<char>('a' + code % 3);
    return s;
}

// Every string of length 1..max_len over {a, b, c}; the strings over {a, b}
// are among them.
Tally exhaustive_sweep(int max_len, unsigned threads, std::uint64_t& binary) {
    std::vector<std::pair<int, std::uint64_t>> work;  // (length, code)
    binary = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::uint64_t count = 1;
        for (int k = 0; k < len; ++k) count *= 3;
        for (std::uint64_t c = 0; c < count; ++c) work.emplace_back(len, c);
        binary += std::uint64_t{1} << len;
    }

    std::vector<Tally> parts(threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&](unsigned id) {
        VerifyOptions opt;
        opt.exhaustive = true;
        opt.max_mismatches = 1;
        for (;;) {
            const std::size_t k = next.fetch_add(256);
            if (k >= work.size()) return;
            for (std::size_t x = k; x < std::min(work.size(), k + 256); ++x) {
                if (parts[id].ops.mismatches.size() + parts[id].structure.mismatches.size() >= 4) return;
                check_text(decode(work[x].second, work[x].first), opt, false, parts[id]);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& th : pool) th.join();
    Tally all;
    for (const auto& p : parts) all.merge(p);
    return all;
}

Tally random_sweep(unsigned threads) {
    std::mt19937_64 rng(kSeed);
    std::vector<std::string> texts;
    for (int k = 0; k < 200; ++k) {
        std::string s(1 + rng() % 200, 'a');
        const std::uint64_t sigma = 1 + rng() % 4;
        for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
        texts.push_back(std::move(s));
    }
    std::vector<Tally> parts(threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&](unsigned id) {
        for (std::size_t k; (k = next.fetch_add(1)) < texts.size();) {
            VerifyOptions opt;
            opt.exhaustive = false;
            opt.samples = 1000;
            opt.seed = kSeed + k;
            check_text(texts[k], opt, true, parts[id]);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& th : pool) th.join();
    Tally all;
    for (const auto& p : parts) all.merge(p);
    return all;
}

// ---------------------------------------------------------------------------

Report hpd_suite(int dags, std::uint64_t& max_light, std::uint64_t& light_cap_violations) {
    using cdawgst::testing::BruteTree;
    Report r;
    std::mt19937_64 rng(kSeed);
    auto fail = [&](const char* op, std::string args) {
        if (r.mismatches.size() < 4) r.mismatches.push_back({op, std::move(args), "brute force", "different"});
    };
    const std::vector<Telescoping> fns{Telescoping::sum, Telescoping::unit};
    for (int round = 0; round < dags; ++round) {
        const OrderedDag g = cdawgst::testing::random_dag(rng, 8, 16, 8, 2);
        const HpdIndex h(g, fns, round % 2 ? LaKind::path_ladder : LaKind::binary_lifting);
        const BruteTree t(g, fns);
        const std::uint64_t n = t.leaves();
        const auto cap = static_cast<std::uint64_t>(std::bit_width(n));  // floor(log2 N) + 1
        const std::string tag = "dag=" + std::to_string(round);
        auto count = [&](bool ok, const char* op, const std::string& a) {
            ++r.checks;
            if (!ok) fail(op, tag + " " + a);
        };
        auto light = [&](const QueryStats& st) {
            max_light = std::max(max_light, st.max_light_per_descent);
            if (st.max_light_per_descent > cap) ++light_cap_violations;
        };
        for (std::uint64_t i = 1; i <= n; ++i) {
            QueryStats st;
            auto leaf = h.leaf_eval(i, &st);
            light(st);
            count(leaf.value == t.leaf(i).value && leaf.payload == t.leaf(i).payload, "leafEval", std::to_string(i));
        }
        for (std::uint64_t i = 1; i <= n; ++i)
            for (std::uint64_t j = i; j <= n; ++j) {
                const std::string a = std::to_string(i) + "," + std::to_string(j);
                QueryStats st;
                auto got = h.lca_map(i, j, &st);
                const auto& want = t.node(t.lca(i, j));
                count(got.node == want.dag_node && got.value == want.value &&
                          got.leaves == Interval{want.lo, want.hi},
                      "lcaMap", a);
                auto range = h.range_eval(i, j, &st);
                light(st);
                bool ok = range.size() == j - i + 1;
                for (std::uint64_t k = i; ok && k <= j; ++k) {
                    ok = range[k - i].value == t.leaf(k).value && range[k - i].payload == t.leaf(k).payload;
                    if (ok && k > i) ok = range[k - i].join == t.node(t.lca(k - 1, k)).value;
                }
                count(ok, "rangeEval", a);
            }
        for (std::size_t k = 0; k < t.size(); ++k) {
            const auto& x = t.node(k);
            for (int ch = 0; ch < 2; ++ch)
                for (std::int64_t thr = -1; thr <= x.value[ch] + 1; ++thr) {
                    const std::string a = std::to_string(x.lo) + "," + std::to_string(x.hi) + "," + std::to_string(thr) +
                                          ",ch" + std::to_string(ch);
                    const auto want = t.weighted_ancestor(k, thr, ch);
                    try {
                        QueryStats st;
                        auto got = h.weighted_ancestor(x.lo, x.hi, thr, ch, &st);
                        light(st);
                        const auto& w = t.node(static_cast<std::size_t>(want));
                        count(want >= 0 && got.node == w.dag_node && got.value == w.value &&
                                  got.leaves == Interval{w.lo, w.hi},
                              "weightedAncestor", a);
                    } catch (const std::domain_error&) {
                        count(want < 0, "weightedAncestor", a);
                    }
                }
        }
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    int max_len = 12;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    for (int k = 1; k < argc; ++k) {
        if (!std::strcmp(argv[k], "--max-length") && k + 1 < argc) max_len = std::atoi(argv[++k]);
        else if (!std::strcmp(argv[k], "--threads") && k + 1 < argc) threads = static_cast<unsigned>(std::atoi(argv[++k]));
    }
    bool all_ok = true;
    auto report = [&](bool ok, int k, const std::string& what) {
        line(ok, k, what);
        all_ok = all_ok && ok;
    };

    // 1 -------------------------------------------------------------------
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t binary = 0;
    const Tally ex = exhaustive_sweep(max_len, threads, binary);
    report(ex.ops.ok(), 1,
           "exhaustive oracle equivalence, lengths 1.." + std::to_string(max_len) + ", " + std::to_string(ex.texts) +
               " strings over {1,2,3} (" + std::to_string(binary) + " over {1,2}), both modes, " +
               std::to_string(ex.ops.checks) + " checks, " + std::to_string(ex.ops.mismatches.size()) +
               " mismatches, " + std::to_string(static_cast<int>(seconds_since(t0))) + "s on " +
               std::to_string(threads) + " thread(s)" + first(ex.ops));

    // 2 -------------------------------------------------------------------
    t0 = std::chrono::steady_clock::now();
    const Tally rnd = random_sweep(threads);
    report(rnd.ops.ok(), 2,
           "randomized oracle equivalence, " + std::to_string(rnd.texts) +
               " seeded strings (length <= 200, sigma <= 4), 1000 samples per operation, " +
               std::to_string(rnd.ops.checks) + " checks, " + std::to_string(rnd.ops.mismatches.size()) +
               " mismatches, " + std::to_string(static_cast<int>(seconds_since(t0))) + "s" + first(rnd.ops));

    // 3 -------------------------------------------------------------------
    Report structure = ex.structure;
    structure.merge(rnd.structure);
    const std::string fib = fibonacci_word(1u << 14);
    std::uint64_t fib_texts = 0;
    for (pos_t n = 128; n <= 512; n *= 2) {
        OracleIndex o(normalize(fib.substr(0, n - 1)));
        structure.merge(verify_structure(Cst::build(o), o));
        ++fib_texts;
    }
    report(structure.ok(), 3,
           "structural checks (|R_T| <= e_T, node/maximal-repeat bijection, distinct in-weights, expand = T, "
           "ISA sums) on " +
               std::to_string(ex.texts + rnd.texts + fib_texts) + " texts, " + std::to_string(structure.checks) +
               " checks" + first(structure));

    // 4 -------------------------------------------------------------------
    const auto rows = bench_prefixes(fib, Mode::full, 1000, kSeed, 128);
    bool probes_ok = true, ratio_ok = true;
    double worst = 0;
    std::string trend;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        for (int op = 0; op < 3; ++op) {
            const double ratio = static_cast<double>(r.max[op]) / (std::log2(r.n) * std::log2(r.n));
            worst = std::max(worst, ratio);
            probes_ok = probes_ok && static_cast<double>(r.max[op]) <= r.bound(kProbeConstant);
        }
        const double et = static_cast<double>(r.arcs) / static_cast<double>(r.n);
        if (k > 0) ratio_ok = ratio_ok && et < static_cast<double>(rows[k - 1].arcs) / static_cast<double>(rows[k - 1].n);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s%llu:%.4f", k ? " " : "", static_cast<unsigned long long>(r.n), et);
        trend += buf;
    }
    char worst_buf[32];
    std::snprintf(worst_buf, sizeof worst_buf, "%.2f", worst);
    report(probes_ok && ratio_ok && rows.size() == 8, 4,
           "Fibonacci prefixes n=2^7..2^14: max probes per selectLeaf/isa/lca query <= " +
               std::to_string(static_cast<int>(kProbeConstant)) + "*log2(n)^2 (worst ratio " + worst_buf +
               "), e_T/n " + (ratio_ok ? "strictly decreasing" : "NOT decreasing") + " [" + trend + "]");

    // 5 -------------------------------------------------------------------
    std::uint64_t max_light = 0, light_violations = 0;
    const Report hpd = hpd_suite(500, max_light, light_violations);
    report(hpd.ok() && light_violations == 0, 5,
           "500 random DAGs: leafEval/rangeEval/lcaMap/weightedAncestor equal the expanded tree, " +
               std::to_string(hpd.checks) + " checks, max light edges per descent " + std::to_string(max_light) +
               ", " + std::to_string(light_violations) + " over floor(log2 N)+1" + first(hpd));

    // 6 -------------------------------------------------------------------
    Report ser = ex.serialization;
    ser.merge(rnd.serialization);
    for (pos_t n = 128; n <= (1u << 14); n *= 2) {
        OracleIndex o(normalize(fib.substr(0, n - 1)));
        for (Mode m : {Mode::full, Mode::lite})
            serialization_check(Cst::build(o, m), n <= 1024 ? &o : nullptr, ser, "fib" + std::to_string(n));
    }
    report(ser.ok(), 6,
           "save/load/re-save bit identical on every suite input in both modes, loaded indexes re-verified on the "
           "random and Fibonacci inputs, " +
               std::to_string(ser.checks) + " checks" + first(ser));

    return all_ok ? 0 : 1;
}
