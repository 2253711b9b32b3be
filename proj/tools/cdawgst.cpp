// Command-line front end: build, query, verify, bench, stats.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>

#include "cdawgst/bench.hpp"
#include "cdawgst/index_file.hpp"
#include "cdawgst/verify.hpp"

using namespace cdawgst;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMismatch = 2, kIo = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, Mode> kModes{{"full", Mode::full}, {"lite", Mode::lite}};
const std::map<std::string, LaKind> kLaKinds{{"lifting", LaKind::binary_lifting}, {"ladder", LaKind::path_ladder}};

std::string read_input(const std::string& path, const std::string& alphabet) {
    std::string raw = read_file(path);
    if (raw.empty()) throw UsageError("input is empty");
    if (alphabet == "dna") {
        for (std::size_t k = 0; k < raw.size(); ++k)
            if (raw[k] != 'A' && raw[k] != 'C' && raw[k] != 'G' && raw[k] != 'T')
                throw UsageError("byte " + std::to_string(k + 1) + " is not one of ACGT");
    }
    return raw;
}

std::size_t bwt_runs(const OracleIndex& o) {
    std::size_t r = 0;
    for (pos_t i = 1; i <= o.size(); ++i) r += i == 1 || o.bwt[i] != o.bwt[i - 1];
    return r;
}

// ---------------------------------------------------------------------------
// query

pos_t parse_pos(const std::string& s) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw UsageError("");
        return v;
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
}

// "i" or "i:j".
Interval parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        pos_t i = parse_pos(s);
        return {i, i};
    }
    return {parse_pos(s.substr(0, colon)), parse_pos(s.substr(colon + 1))};
}

// A node is named by the leaf range below it: "root", a leaf rank "r", or
// "i:j" for lca(i, j).
NodeId parse_node(const Cst& cst, const std::string& s) {
    if (s == "root") return cst.root();
    Interval iv = parse_range(s);
    if (iv.lo == iv.hi) return cst.select_leaf(iv.lo);
    return cst.lca(iv.lo, iv.hi);
}

symbol_t parse_char(const Cst& cst, const std::string& s) {
    if (s.size() != 1) throw UsageError("expected a single character, got '" + s + "'");
    const auto& a = cst.alphabet();
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] == static_cast<std::uint8_t>(s[0])) return static_cast<symbol_t>(k + 1);
    if (s == "#") return 0;
    return cst.sigma() + 1;  // absent: no such child or link
}

std::string show_char(const Cst& cst, symbol_t c) {
    return c == 0 ? std::string("#") : std::string(1, static_cast<char>(cst.alphabet()[c - 1]));
}

std::string show_node(const Cst& cst, const NodeId& id) {
    Interval iv = cst.interval(id);
    return "interval=" + std::to_string(iv.lo) + ":" + std::to_string(iv.hi) +
           " strdepth=" + std::to_string(id.depth) + " cdawg=" + std::to_string(id.node);
}

std::string show_node(const Cst& cst, const std::optional<NodeId>& id) { return id ? show_node(cst, *id) : "none"; }

void need(const std::vector<std::string>& a, std::size_t k, const std::string& op) {
    if (a.size() != k)
        throw UsageError(op + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
}

int run_query(const Cst& cst, const std::string& op, const std::vector<std::string>& a, const std::string& by) {
    auto lines = [](const std::vector<pos_t>& v) {
        for (pos_t x : v) std::cout << x << '\n';
    };
    auto ranged = [&](auto single, auto range) {
        need(a, 1, op);
        Interval iv = parse_range(a[0]);
        if (iv.lo == iv.hi) std::cout << single(iv.lo) << '\n';
        else lines(range(iv.lo, iv.hi));
    };

    if (op == "sa") {
        ranged([&](pos_t i) { return cst.sa(i); }, [&](pos_t i, pos_t j) { return cst.sa(i, j); });
    } else if (op == "isa") {
        ranged([&](pos_t i) { return cst.isa(i); }, [&](pos_t i, pos_t j) { return cst.isa(i, j); });
    } else if (op == "lcp") {
        ranged([&](pos_t i) { return cst.lcp(i); }, [&](pos_t i, pos_t j) { return cst.lcp(i, j); });
    } else if (op == "plcp") {
        ranged([&](pos_t i) { return cst.plcp(i); }, [&](pos_t i, pos_t j) { return cst.plcp(i, j); });
    } else if (op == "extract") {
        need(a, 1, op);
        Interval iv = parse_range(a[0]);
        std::string s;
        for (symbol_t c : cst.extract(iv.lo, iv.hi)) s += show_char(cst, c);
        std::cout << s << '\n';
    } else if (op == "selectleaf") {
        need(a, 1, op);
        std::cout << show_node(cst, cst.select_leaf(parse_pos(a[0]))) << '\n';
    } else if (op == "lca") {
        Interval iv;
        if (a.size() == 2) iv = {parse_pos(a[0]), parse_pos(a[1])};
        else {
            need(a, 1, op);
            iv = parse_range(a[0]);
        }
        std::cout << show_node(cst, cst.lca(iv.lo, iv.hi)) << '\n';
    } else if (op == "parent") {
        need(a, 1, op);
        std::cout << show_node(cst, cst.parent(parse_node(cst, a[0]))) << '\n';
    } else if (op == "child") {
        need(a, 2, op);
        const NodeId v = parse_node(cst, a[0]);
        const symbol_t c = parse_char(cst, a[1]);
        std::cout << show_node(cst, c > cst.sigma() ? std::nullopt : cst.child(v, c)) << '\n';
    } else if (op == "suffixlink") {
        need(a, 1, op);
        std::cout << show_node(cst, cst.suffix_link(parse_node(cst, a[0]))) << '\n';
    } else if (op == "weinerlink") {
        need(a, 2, op);
        const NodeId v = parse_node(cst, a[0]);
        const symbol_t c = parse_char(cst, a[1]);
        if (cst.mode() == Mode::lite) throw unsupported_error("weinerlink needs a full index (built with --mode full)");
        std::cout << show_node(cst, c > cst.sigma() ? std::nullopt : cst.weiner_link(v, c)) << '\n';
    } else if (op == "lce") {
        need(a, 2, op);
        std::cout << cst.lce(parse_pos(a[0]), parse_pos(a[1])) << '\n';
    } else if (op == "ipm") {
        need(a, 1, op);
        Interval iv = parse_range(a[0]);
        lines(cst.internal_pattern_match(iv.lo, iv.hi));
    } else if (op == "letter") {
        need(a, 2, op);
        std::cout << show_char(cst, cst.letter(parse_node(cst, a[0]), parse_pos(a[1]))) << '\n';
    } else if (op == "ancestor") {
        need(a, 2, op);
        std::cout << show_node(cst, cst.ancestor(parse_node(cst, a[0]), parse_pos(a[1]))) << '\n';
    } else if (op == "strancestor") {
        need(a, 2, op);
        std::cout << show_node(cst, cst.str_ancestor(parse_node(cst, a[0]), parse_pos(a[1]))) << '\n';
    } else if (op == "depth") {
        need(a, 1, op);
        std::cout << cst.depth(parse_node(cst, a[0])) << '\n';
    } else if (op == "deepest") {
        need(a, 1, op);
        const NodeId v = parse_node(cst, a[0]);
        std::cout << show_node(cst, by == "depth" ? cst.deepest_node_by_depth(v) : cst.deepest_node_by_string_depth(v))
                  << '\n';
    } else {
        throw UsageError("unknown operation '" + op + "'");
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string input, index, alphabet;
    std::uint64_t random = 0, max_length = 200, sigma = 4, seed = 42, samples = 1000;
    bool exhaustive = false;
    std::string la = "lifting";
};

int finish(const Report& r, std::size_t texts) {
    if (!r.ok()) {
        for (const auto& m : r.mismatches) std::cout << format_mismatch(m) << '\n';
        return kMismatch;
    }
    std::cout << "OK, 0 mismatches (" << r.checks << " checks over " << texts << (texts == 1 ? " text)" : " texts)")
              << '\n';
    return kOk;
}

int run_verify(const VerifyArgs& v) {
    VerifyOptions opt;
    opt.seed = v.seed;
    opt.samples = v.samples;
    const LaKind la = kLaKinds.at(v.la);

    if (v.random > 0) {
        std::mt19937_64 rng(v.seed);
        Report total;
        for (std::uint64_t k = 0; k < v.random && total.ok(); ++k) {
            std::string s(1 + rng() % v.max_length, 'a');
            const std::uint64_t sigma = 1 + rng() % v.sigma;
            for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
            opt.exhaustive = v.exhaustive;
            opt.seed = v.seed + k;
            total.merge(verify_text(normalize(s), opt, la));
        }
        return finish(total, v.random);
    }

    if (v.input.empty()) throw UsageError("verify needs an input file or --random");
    const std::string raw = read_input(v.input, v.alphabet);
    if (raw.size() + 1 > 10000) throw UsageError("input too large for the oracle (n must be at most 10000)");
    const Text text = normalize(raw);
    opt.exhaustive = v.exhaustive || text.size() <= 64;

    if (!v.index.empty()) {
        Cst cst = read_index_file(v.index, la);
        OracleIndex o(text);
        if (cst.size() != o.size() || cst.alphabet() != text.alphabet())
            throw UsageError("index was not built from this input");
        Report r = verify_structure(cst, o, opt);
        if (r.ok()) r.merge(verify_operations(cst, o, opt));
        return finish(r, 1);
    }
    return finish(verify_text(text, opt, la), 1);
}

// ---------------------------------------------------------------------------

int run_bench(const std::string& input, const std::string& alphabet, Mode mode, std::uint64_t queries,
              std::uint64_t seed, double c) {
    const std::string raw = read_input(input, alphabet);
    auto rows = bench_prefixes(raw, mode, queries, seed);
    std::printf("%8s %8s %9s %8s", "n", "e_T", "e_T/n", "grammar");
    for (const char* name : kBenchOpNames) std::printf(" %12s", name);
    std::printf(" %10s\n", "c*log2^2n");
    bool ok = true;
    for (const auto& r : rows) {
        std::printf("%8llu %8zu %9.4f %8zu", static_cast<unsigned long long>(r.n), r.arcs,
                    static_cast<double>(r.arcs) / static_cast<double>(r.n), r.grammar);
        for (double m : r.mean) std::printf(" %12.2f", m);
        std::printf(" %10.1f%s\n", r.bound(c), r.within(c) ? "" : "  EXCEEDED");
        ok = ok && r.within(c);
    }
    if (!ok) {
        std::cout << "probe bound c*log2(n)^2 exceeded with c=" << c << '\n';
        return kMismatch;
    }
    return kOk;
}

int run_stats(const std::string& path) {
    const std::string bytes = read_file(path);
    Cst cst = load_index(bytes);
    const Cdawg& g = cst.cdawg();
    std::cout << "n=" << cst.size() << " sigma=" << cst.sigma() << " mode=" << to_string(cst.mode()) << '\n'
              << "cdawg nodes=" << g.node_count() << " e_T=" << g.arc_count() << '\n';
    if (g.has_rlbwt()) std::cout << "R_T=" << g.rlbwt().runs() << '\n';
    std::cout << "grammar size=" << cst.grammar().grammar_size() << " nodes=" << cst.grammar().node_count() << '\n'
              << "hpd expanded nodes fwd=" << cst.forward_hpd().expanded_nodes()
              << " rev=" << cst.reverse_hpd().expanded_nodes() << '\n'
              << "file bytes=" << bytes.size() << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed suffix tree over the CDAWG"};
    app.require_subcommand(1);

    std::string mode_name = "full", la_name = "lifting", alphabet;
    std::uint64_t seed = 42;

    auto* build = app.add_subcommand("build", "Build an index from a text file");
    std::string in_path, out_path;
    build->add_option("input", in_path, "Text file (raw bytes)")->required();
    build->add_option("output", out_path, "Index file to write")->required();
    build->add_option("--mode", mode_name, "full or lite")->check(CLI::IsMember({"full", "lite"}));
    build->add_option("--alphabet", alphabet, "Restrict the input alphabet")->check(CLI::IsMember({"dna"}));

    auto* query = app.add_subcommand("query", "Answer one query on an index");
    std::string index_path, op, by = "string";
    std::vector<std::string> qargs;
    query->add_option("index", index_path, "Index file")->required();
    query->add_option("op", op, "sa isa lcp plcp extract selectleaf lca parent child suffixlink weinerlink lce ipm "
                                "letter ancestor strancestor depth deepest")
        ->required();
    query->add_option("args", qargs, "Positions, ranges i:j, nodes (root, r or i:j) and characters");
    query->add_option("--by", by, "deepest: string or depth")->check(CLI::IsMember({"string", "depth"}));
    query->add_option("--la", la_name, "Level ancestor structure")->check(CLI::IsMember({"lifting", "ladder"}));

    auto* verify = app.add_subcommand("verify", "Check an index against the brute-force oracle");
    VerifyArgs v;
    verify->add_option("input", v.input, "Text file (n <= 10000)");
    verify->add_option("--index", v.index, "Verify this index file instead of a fresh build");
    verify->add_option("--random", v.random, "Verify this many seeded random strings instead");
    verify->add_option("--max-length", v.max_length, "Random strings: maximum length")->check(CLI::Range(1, 100000));
    verify->add_option("--sigma", v.sigma, "Random strings: maximum alphabet size")->check(CLI::Range(1, 26));
    verify->add_option("--samples", v.samples, "Sampled queries per operation");
    verify->add_flag("--exhaustive", v.exhaustive, "Every argument of every operation");
    verify->add_option("--seed", v.seed, "Random seed");
    verify->add_option("--alphabet", v.alphabet, "Restrict the input alphabet")->check(CLI::IsMember({"dna"}));
    verify->add_option("--la", v.la, "Level ancestor structure")->check(CLI::IsMember({"lifting", "ladder"}));

    auto* bench = app.add_subcommand("bench", "Probe counts over doubling prefixes");
    std::uint64_t queries = 200;
    double c = 8.0;
    bench->add_option("input", in_path, "Text file")->required();
    bench->add_option("--mode", mode_name, "full or lite")->check(CLI::IsMember({"full", "lite"}));
    bench->add_option("--queries", queries, "Queries per operation and prefix");
    bench->add_option("--seed", seed, "Random seed");
    bench->add_option("-c", c, "Constant of the c*log2(n)^2 probe bound");
    bench->add_option("--alphabet", alphabet, "Restrict the input alphabet")->check(CLI::IsMember({"dna"}));

    auto* stats = app.add_subcommand("stats", "Print index statistics");
    stats->add_option("index", index_path, "Index file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*build) {
            const std::string raw = read_input(in_path, alphabet);
            const auto t0 = std::chrono::steady_clock::now();
            OracleIndex o(normalize(raw));
            Cst cst = Cst::build(o, kModes.at(mode_name));
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            write_index_file(cst, out_path);
            std::cerr << "n=" << cst.size() << " sigma=" << cst.sigma() << " e_T=" << cst.cdawg().arc_count()
                      << " R_T=" << bwt_runs(o) << " grammar=" << cst.grammar().grammar_size()
                      << " mode=" << mode_name << " build_ms=" << ms << '\n';
            return kOk;
        }
        if (*query) return run_query(read_index_file(index_path, kLaKinds.at(la_name)), op, qargs, by);
        if (*verify) return run_verify(v);
        if (*bench) return run_bench(in_path, alphabet, kModes.at(mode_name), queries, seed, c);
        if (*stats) return run_stats(index_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const format_error& e) {
        std::cerr << "error: corrupt index: " << e.what() << '\n';
        return kIo;
    } catch (const std::logic_error& e) {
        // Range errors, malformed nodes, unreachable thresholds, lite limits.
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}
