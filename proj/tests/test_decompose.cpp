#include <doctest.h>

#include "twc/decompose.hpp"

using namespace twc;

TEST_CASE("decompositions of the worked channels") {
    Decomposition d24 = decompose(2, 4);
    CHECK(d24.str() == "(1,2)^2");
    CHECK(d24.count({1, 2}) == 2);

    Decomposition d31 = decompose(3, 1);
    CHECK(d31.count({1, 0}) == 1);
    CHECK(d31.count({2, 1}) == 1);
    CHECK(d31.str() == "(1,0)\xc3\x97(2,1)");

    CHECK(decompose(0, 5).str() == "(0,1)^5");
    CHECK(decompose(0, 0).str() == "empty");
    CHECK(decompose(3, 4).undecomposed);
    CHECK(decompose(3, 3).undecomposed);
}

TEST_CASE("band boundaries agree between the adjacent formulas") {
    for (int m = 1; m <= 10; ++m) {
        // alpha = 1/2: both low-band splits give (1,2)^m
        Decomposition low = decompose(m, 2 * m);
        Decomposition low_alt;
        low_alt.m = m;
        low_alt.n = 2 * m;
        if (2 * (2 * m) - 3 * m > 0) low_alt.parts.push_back({{1, 2}, 2 * (2 * m) - 3 * m});
        if (2 * m - 2 * m > 0) low_alt.parts.push_back({{2, 3}, 2 * m - 2 * m});
        CHECK(low.parts == low_alt.parts);
        // alpha = 2: both high-band splits give (2,1)^n
        Decomposition high = decompose(2 * m, m);
        CHECK(high.count({2, 1}) == m);
        CHECK(high.count({1, 0}) == 0);
        CHECK(high.count({3, 2}) == 0);
    }
}

TEST_CASE("decompose then validate over the full grid") {
    for (int m = 0; m <= 20; ++m)
        for (int n = 0; n <= 20; ++n) {
            Decomposition d = decompose(m, n);
            REQUIRE(validate(d, m, n));
        }
    CHECK_FALSE(validate(Decomposition{2, 4, {{{1, 2}, 1}}, false}, 2, 4));
    CHECK_FALSE(validate(Decomposition{2, 4, {{{1, 3}, 2}}, false}, 2, 4));
}

TEST_CASE("chains partition the levels and realize the part shapes") {
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n) {
            if (m == n) continue;
            Decomposition d = decompose(m, n);
            if (d.undecomposed) continue;
            auto chains = decomposition_chains(m, n);
            int q = std::max(m, n);
            std::vector<int> seen(q + 1, 0);
            size_t ci = 0;
            for (auto& [part, count] : d.parts) {
                size_t len = (size_t)std::max(part.me, part.ne);
                for (int k = 0; k < count; ++k, ++ci) {
                    REQUIRE(ci < chains.size());
                    REQUIRE(chains[ci].size() == len);
                    for (int level : chains[ci]) {
                        REQUIRE(level >= 1);
                        REQUIRE(level <= q);
                        seen[level] += 1;
                    }
                }
            }
            CHECK(ci == chains.size());
            for (int level = 1; level <= q; ++level) CHECK(seen[level] == 1);
        }
}
