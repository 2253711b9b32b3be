#include <doctest.h>

#include "cdawgst/index_file.hpp"
#include "cdawgst/verify.hpp"

using namespace cdawgst;

TEST_CASE("round trip is bit exact and answers the same") {
    for (const char* s : {"A", "AB", "AA", "BANANA", "AGAGCGAGAGCGCGC"})
        for (Mode mode : {Mode::full, Mode::lite})
            for (LaKind la : {LaKind::binary_lifting, LaKind::path_ladder}) {
                CAPTURE(s);
                CAPTURE(to_string(mode));
                OracleIndex o(normalize(s));
                Cst cst = Cst::build(o, mode, la);
                const std::string bytes = save_index(cst);
                Cst back = load_index(bytes, la);
                CHECK(save_index(back) == bytes);
                CHECK(back.cdawg() == cst.cdawg());
                CHECK(back.grammar() == cst.grammar());
                CHECK(back.forward_hpd().same_data(cst.forward_hpd()));
                CHECK(back.alphabet() == cst.alphabet());
                auto r = verify_operations(back, o);
                CHECK_MESSAGE(r.ok(), (r.ok() ? "" : format_mismatch(r.mismatches.front())));
            }
}

TEST_CASE("header") {
    Cst cst = Cst::build(normalize("AB"));
    const std::string bytes = save_index(cst);
    CHECK(bytes.substr(0, 5) == "CDCST");
    auto h = read_header(bytes);
    CHECK(h.n == 3);
    CHECK(h.sigma == 2);
    CHECK(h.mode == Mode::full);
    CHECK(cst.cdawg().arc_count() == 3);
    CHECK(save_index(Cst::build(normalize("AB"))) == bytes);
}

TEST_CASE("corruption is rejected") {
    const std::string bytes = save_index(Cst::build(normalize("AGAGCGAGAGCGCGC")));
    for (std::size_t k = 0; k < bytes.size(); k += 7) {
        std::string bad = bytes;
        bad[k] = static_cast<char>(bad[k] ^ 0x10);
        CHECK_THROWS_AS(load_index(bad), format_error);
    }
    CHECK_THROWS_AS(load_index(bytes.substr(0, bytes.size() - 1)), format_error);
    CHECK_THROWS_AS(load_index(""), format_error);

    std::string other = bytes;
    other[5] = 2;  // version
    CHECK_THROWS_WITH_AS(read_header(other), doctest::Contains("version"), format_error);
}
