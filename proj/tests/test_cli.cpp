#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cdawgst/index_file.hpp"

using namespace cdawgst;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CDAWGST_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t k = fread(buf, 1, sizeof buf, p)) out.append(buf, k);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string lines(const std::vector<pos_t>& v) {
    std::string s;
    for (pos_t x : v) s += std::to_string(x) + "\n";
    return s;
}

struct Workdir {
    fs::path dir = fs::temp_directory_path() / ("cdawgst_cli_" + std::to_string(::getpid()));
    Workdir() { fs::create_directories(dir); }
    ~Workdir() { fs::remove_all(dir); }
    std::string file(const std::string& name, const std::string& content) const {
        std::ofstream(dir / name, std::ios::binary) << content;
        return (dir / name).string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("build and query agree with the library") {
    Workdir w;
    const std::string text = w.file("fig.txt", "AGAGCGAGAGCGCGC");
    const std::string idx = w.path("fig.idx");
    REQUIRE(run("build " + text + " " + idx).code == 0);
    const Cst cst = read_index_file(idx);
    const Cst fresh = Cst::build(normalize("AGAGCGAGAGCGCGC"));
    CHECK(save_index(cst) == save_index(fresh));

    CHECK(run("query " + idx + " extract 1:4").out == "AGAG\n");
    CHECK(run("query " + idx + " isa 16").out == "1\n");
    CHECK(run("query " + idx + " sa 1:3").out == lines(cst.sa(1, 3)));
    CHECK(run("query " + idx + " lcp 1:16").out == lines(cst.lcp(1, 16)));
    CHECK(run("query " + idx + " plcp 4:9").out == lines(cst.plcp(4, 9)));
    CHECK(run("query " + idx + " ipm 1:2").out == "1\n3\n7\n9\n");
    CHECK(run("query " + idx + " lce 1 7").out == std::to_string(cst.lce(1, 7)) + "\n");
    CHECK(run("query " + idx + " depth 2:3").out == std::to_string(cst.depth(cst.lca(2, 3))) + "\n");
    CHECK(run("query " + idx + " lca 2:3").out == "interval=2:3 strdepth=6 cdawg=" +
                                                      std::to_string(cst.lca(2, 3).node) + "\n");
    CHECK(run("query " + idx + " parent root").out == "none\n");
    CHECK(run("query " + idx + " child root Z").out == "none\n");
    CHECK(run("query " + idx + " letter 2:3 5").out == "C\n");

    // One node-valued answer per operation, compared field by field.
    const NodeId v = cst.lca(2, 3);
    auto node = [&](const NodeId& id) {
        Interval iv = cst.interval(id);
        return "interval=" + std::to_string(iv.lo) + ":" + std::to_string(iv.hi) +
               " strdepth=" + std::to_string(id.depth) + " cdawg=" + std::to_string(id.node) + "\n";
    };
    CHECK(run("query " + idx + " suffixlink 2:3").out == node(*cst.suffix_link(v)));
    CHECK(run("query " + idx + " strancestor 2:3 3").out == node(cst.str_ancestor(v, 3)));
    CHECK(run("query " + idx + " ancestor 2:3 1").out == node(cst.ancestor(v, 1)));
    CHECK(run("query " + idx + " selectleaf 5").out == node(cst.select_leaf(5)));
    CHECK(run("query " + idx + " deepest root --by depth").out == node(cst.deepest_node_by_depth(cst.root())));
    CHECK(run("query " + idx + " deepest root").out == node(cst.deepest_node_by_string_depth(cst.root())));
    CHECK(run("query " + idx + " weinerlink 10:16 A").out == node(*cst.weiner_link(cst.lca(10, 16), 1)));
}

TEST_CASE("exit codes") {
    Workdir w;
    const std::string text = w.file("ab.txt", "AB");
    const std::string idx = w.path("ab.idx"), lite = w.path("lite.idx");
    CHECK(run("build " + text + " " + idx).code == 0);
    CHECK(run("build " + text + " " + lite + " --mode lite").code == 0);
    CHECK(run("").code == 1);
    CHECK(run("query " + idx + " nosuchop 1").code == 1);
    CHECK(run("query " + idx + " sa 9").code == 1);
    CHECK(run("query " + lite + " weinerlink root A").code == 1);
    CHECK(run("query " + w.path("missing.idx") + " sa 1").code == 3);
    CHECK(run("build " + w.file("empty.txt", "") + " " + w.path("e.idx")).code == 1);
    CHECK(run("build " + w.file("x.txt", "ACGN") + " " + w.path("x.idx") + " --alphabet dna").code == 1);

    std::string bytes = read_file(idx);
    bytes[bytes.size() / 2] ^= 1;
    const std::string bad = w.file("bad.idx", bytes);
    CHECK(run("stats " + bad).code == 3);
    CHECK(run("verify " + text + " --index " + bad).code == 3);
}

TEST_CASE("verify, bench and stats") {
    Workdir w;
    CHECK(run("verify " + w.file("aa.txt", "AA")).out.rfind("OK, 0 mismatches", 0) == 0);
    CHECK(run("verify --random 5 --max-length 40").code == 0);
    CHECK(run("verify " + w.file("big.txt", std::string(10000, 'A'))).code == 1);

    auto one = run("bench " + w.file("one.txt", "A"));
    CHECK(one.code == 0);
    CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 2);  // header and one row

    const std::string idx = w.path("fig.idx");
    REQUIRE(run("build " + w.file("fig.txt", "AGAGCGAGAGCGCGC") + " " + idx).code == 0);
    CHECK(run("stats " + idx).out.find("n=16") != std::string::npos);
}
