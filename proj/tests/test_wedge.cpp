#include "doctest.h"
#include "syzygy/wedge.hpp"

using namespace syz;
using namespace syz::koszul;

TEST_CASE("binomial cache") {
    CHECK(binom(0, 0) == 1);
    CHECK(binom(4, 2) == 6);
    CHECK(binom(10, 7) == 120);
    CHECK(binom(5, -1) == 0);
    CHECK(binom(5, 6) == 0);
    CHECK(binom(2021 % 64, 3) == binom(37, 3));
}

TEST_CASE("rank and unrank are inverse bijections in lex order") {
    for (u32 n = 1; n <= 9; ++n) {
        for (u32 p = 0; p <= n; ++p) {
            WedgeBasis w(n, p);
            REQUIRE(w.count() == binom(n, p));
            std::vector<u32> prev;
            for (u64 idx = 0; idx < w.count(); ++idx) {
                auto tuple = w.unrank(idx);
                REQUIRE(tuple.size() == p);
                for (size_t i = 0; i + 1 < tuple.size(); ++i) CHECK(tuple[i] < tuple[i + 1]);
                for (u32 v : tuple) CHECK(v < n);
                CHECK(w.rank(tuple) == idx);
                if (idx > 0) CHECK(std::lexicographical_compare(prev.begin(), prev.end(),
                                                                tuple.begin(), tuple.end()));
                prev = tuple;
            }
        }
    }
}

TEST_CASE("out of range queries are rejected") {
    WedgeBasis w(5, 2);
    CHECK_THROWS_AS(w.unrank(10), InternalError);
    CHECK_THROWS_AS(w.rank({3, 2}), InternalError);
    CHECK_THROWS_AS(w.rank({1, 5}), InternalError);
}
