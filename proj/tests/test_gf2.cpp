#include <doctest.h>

#include <random>

#include "twc/channel.hpp"
#include "twc/gf2.hpp"

using namespace twc;

TEST_CASE("xor follows the bitwise definition") {
    CHECK((BitVector::parse("00") ^ BitVector::parse("00")) == BitVector::parse("00"));
    CHECK((BitVector::parse("10") ^ BitVector::parse("11")) == BitVector::parse("01"));
    CHECK_THROWS_AS(BitVector::parse("10") ^ BitVector::parse("100"), DimensionError);
}

TEST_CASE("xor is self-inverse on random vectors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        BitVector a(8);
        for (int l = 1; l <= 8; ++l) a.set(l, rng() & 1);
        // independent bitwise check
        BitVector sum = a ^ a;
        for (int l = 1; l <= 8; ++l) CHECK(sum.get(l) == (a.get(l) ^ a.get(l)));
        CHECK(sum.all_zero());
    }
}

TEST_CASE("shift_down moves content toward the bottom") {
    CHECK(shift_down(BitVector::parse("10"), 0) == BitVector::parse("10"));
    CHECK(shift_down(BitVector::parse("10"), 1) == BitVector::parse("01"));
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector x(6);
        for (int l = 1; l <= 6; ++l) x.set(l, rng() & 1);
        CHECK(shift_down(x, 6).all_zero());
    }
    CHECK_THROWS_AS(shift_down(BitVector(3), 4), DomainError);
    CHECK_THROWS_AS(shift_down(BitVector(3), -1), DomainError);
}

TEST_CASE("shift_down is linear and nilpotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int q = 1 + (int)(rng() % 9);
        BitVector a(q), b(q);
        for (int l = 1; l <= q; ++l) {
            a.set(l, rng() & 1);
            b.set(l, rng() & 1);
        }
        int s = (int)(rng() % (q + 1));
        CHECK(shift_down(a ^ b, s) == (shift_down(a, s) ^ shift_down(b, s)));
        BitVector x = a;
        for (int k = 0; k < q; ++k) x = shift_down(x, 1);
        CHECK(x.all_zero());
    }
}

TEST_CASE("input reconstruction inverts the channel map") {
    SUBCASE("zero maps to zero") {
        auto [x1, x2] = reconstruct_inputs(BitVector(2), BitVector(2), 1, 2);
        CHECK(x1.all_zero());
        CHECK(x2.all_zero());
    }
    SUBCASE("exhaustive round trip for (1,2) and (2,3)") {
        for (auto [m, n] : {std::pair<int, int>{1, 2}, {2, 3}}) {
            int q = std::max(m, n);
            for (int u = 0; u < (1 << q); ++u) {
                for (int v = 0; v < (1 << q); ++v) {
                    BitVector x1(q), x2(q);
                    for (int l = 1; l <= q; ++l) {
                        x1.set(l, (u >> (l - 1)) & 1);
                        x2.set(l, (v >> (l - 1)) & 1);
                    }
                    auto [y1, y2] = forward_outputs(x1, x2, m, n);
                    auto [r1, r2] = reconstruct_inputs(y1, y2, m, n);
                    CHECK(r1 == x1);
                    CHECK(r2 == x2);
                }
            }
        }
    }
    SUBCASE("exhaustive round trip for every asymmetric pair up to six levels") {
        for (int m = 0; m <= 6; ++m) {
            for (int n = 0; n <= 6; ++n) {
                if (m == n || std::max(m, n) > 6) continue;
                int q = std::max(m, n);
                for (int u = 0; u < (1 << q); ++u) {
                    for (int v = 0; v < (1 << q); ++v) {
                        BitVector x1(q), x2(q);
                        for (int l = 1; l <= q; ++l) {
                            x1.set(l, (u >> (l - 1)) & 1);
                            x2.set(l, (v >> (l - 1)) & 1);
                        }
                        auto [y1, y2] = forward_outputs(x1, x2, m, n);
                        auto [r1, r2] = reconstruct_inputs(y1, y2, m, n);
                        REQUIRE(r1 == x1);
                        REQUIRE(r2 == x2);
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(reconstruct_inputs(BitVector(2), BitVector(2), 2, 2), DomainError);
}

TEST_CASE("bit strings render top to bottom") {
    CHECK(BitVector::parse("10").str() == "10");
    CHECK(BitVector(0).str() == "-");
}
