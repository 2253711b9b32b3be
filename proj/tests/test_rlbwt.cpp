#include <doctest.h>

#include <random>

#include "cdawgst/rlbwt.hpp"
#include "cdawgst/serialize.hpp"
#include "cdawgst/text.hpp"

using namespace cdawgst;

namespace {

Rlbwt of(const char* s) {
    OracleIndex o(normalize(s));
    return Rlbwt(std::span(o.bwt).subspan(1), o.text().sigma());
}

}  // namespace

TEST_CASE("rank and select on tiny texts") {
    auto aa = of("AA");  // A A #
    CHECK(aa.rank(1, 2) == 2);
    CHECK(aa.select(1, 2) == 2);
    CHECK(aa.rank(1, 0) == 0);
    CHECK_THROWS_AS(aa.rank(1, 4), std::out_of_range);
    CHECK_THROWS_AS(aa.select(1, 3), std::out_of_range);
    CHECK_THROWS_AS(aa.select(1, 0), std::out_of_range);

    auto ab = of("AB");  // B # A
    CHECK(ab.rank(0, 1) == 0);
    CHECK(ab.select(1, 1) == 3);
    CHECK(ab.runs() == 3);
}

TEST_CASE("rank and select agree with a plain scan") {
    std::mt19937_64 rng(1);
    for (int round = 0; round < 50; ++round) {
        std::string s;
        const int len = std::uniform_int_distribution<int>(1, 80)(rng);
        for (int k = 0; k < len; ++k) s += static_cast<char>('a' + std::uniform_int_distribution<int>(0, 2)(rng));
        OracleIndex o(normalize(s));
        Rlbwt r(std::span(o.bwt).subspan(1), o.text().sigma());
        const pos_t n = o.size();
        for (symbol_t c = 0; c <= o.text().sigma(); ++c) {
            pos_t seen = 0;
            for (pos_t i = 1; i <= n; ++i) {
                CHECK(r.access(i) == o.bwt[i]);
                if (o.bwt[i] == c) {
                    ++seen;
                    CHECK(r.select(c, seen) == i);
                }
                CHECK(r.rank(c, i) == seen);
            }
            CHECK(r.count(c) == seen);
            CHECK(r.rank(c, n) == o.C[c + 1] - o.C[c]);
        }
        ByteWriter w;
        r.save(w);
        ByteReader rd(w.data());
        CHECK(Rlbwt::load(rd) == r);
    }
}
