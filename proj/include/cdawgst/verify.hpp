#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdawgst/cst.hpp"

namespace cdawgst {

struct Mismatch {
    std::string op;
    std::string args;
    std::string expected;
    std::string got;
};

/// One-line reproduction: "MISMATCH op=<op> args=<args> expected=<..> got=<..>".
std::string format_mismatch(const Mismatch& m);

struct Report {
    std::uint64_t checks = 0;
    std::vector<Mismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
    void merge(const Report& o);
};

struct VerifyOptions {
    bool exhaustive = true;        // every argument; all pairs for binary operations
    std::uint64_t samples = 1000;  // per operation otherwise
    std::uint64_t seed = 42;
    std::size_t max_mismatches = 1;
};

/// |R_T| <= e_T, the suffix tree regenerated from the CDAWG (topology, labels,
/// weights), the node/maximal-repeat bijection, the BWT class properties (full
/// mode) and the grammar checks: expansion, ISA sums, distinct in-weights and
/// size at most e_T.
Report verify_structure(const Cst& cst, const OracleIndex& o, const VerifyOptions& opt = {});

/// Every facade operation against the oracle.
Report verify_operations(const Cst& cst, const OracleIndex& o, const VerifyOptions& opt = {});

/// Lite answers against full answers on every operation both support.
Report verify_parity(const Cst& full, const Cst& lite, const VerifyOptions& opt = {});

/// Builds both modes for `text` and runs the three suites.
Report verify_text(const Text& text, const VerifyOptions& opt = {}, LaKind la = LaKind::binary_lifting);

}  // namespace cdawgst
