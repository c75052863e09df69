#include <doctest.h>

#include <random>

#include "twc/channel.hpp"

using namespace twc;

namespace {

// Independent per-level evaluation of one channel use: the receiver sees its
// direct sender shifted by q-n and the cross sender shifted by q-m.
BitVector oracle_output(const BitVector& direct, const BitVector& cross, int m, int n) {
    int q = std::max(m, n);
    BitVector y(q);
    for (int i = 1; i <= q; ++i) {
        bool v = false;
        if (i - (q - n) >= 1 && i - (q - n) <= q) v ^= direct.get(i - (q - n));
        if (i - (q - m) >= 1 && i - (q - m) <= q) v ^= cross.get(i - (q - m));
        y.set(i, v);
    }
    return y;
}

BitVector bits(const std::string& s) { return BitVector::parse(s); }

} // namespace

TEST_CASE("forward outputs match the worked receptions") {
    SUBCASE("(1,2): the bottom level carries the function") {
        // x1 = (a1,a2), x2 = (b2,b1) with a1=1, a2=0, b2=1, b1=1
        auto [y1, y2] = forward_outputs(bits("10"), bits("11"), 1, 2);
        CHECK(y1 == bits("11")); // (a1, a2^b2)
        CHECK(y2 == bits("10")); // (b2, b1^a1)
    }
    SUBCASE("(2,3): both receivers see one clean symbol and one function") {
        // x1 = (a1,a2,0), x2 = (b2,b1,0): y1 = (a1, a2^b2, b1), y2 = (b2, b1^a1, a2)
        auto [y1, y2] = forward_outputs(bits("110"), bits("010"), 2, 3);
        CHECK(y1 == bits("111"));
        CHECK(y2 == bits("001"));
    }
    SUBCASE("all-zero inputs stay zero") {
        for (auto [m, n] : {std::pair<int, int>{1, 2}, {3, 1}, {0, 4}, {2, 2}}) {
            int q = std::max(m, n);
            auto [y1, y2] = forward_outputs(BitVector(q), BitVector(q), m, n);
            CHECK(y1.all_zero());
            CHECK(y2.all_zero());
        }
    }
}

TEST_CASE("backward outputs follow the same law with tilde parameters") {
    SUBCASE("(2,1) cross-dominant reception") {
        // x~1 = (at2, at1), x~2 = (bt1, bt2): y~1 = (bt1, bt2^at2), y~2 = (at2, at1^bt1)
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 16; ++trial) {
            BitVector x1t(2), x2t(2);
            for (int l = 1; l <= 2; ++l) {
                x1t.set(l, rng() & 1);
                x2t.set(l, rng() & 1);
            }
            auto [y1, y2] = backward_outputs(x1t, x2t, 2, 1);
            CHECK(y1.get(1) == x2t.get(1));
            CHECK(y1.get(2) == (x2t.get(2) ^ x1t.get(1)));
            CHECK(y2.get(1) == x1t.get(1));
            CHECK(y2.get(2) == (x1t.get(2) ^ x2t.get(1)));
        }
    }
    SUBCASE("(1,0): pure cross-over") {
        auto [y1, y2] = backward_outputs(bits("1"), bits("0"), 1, 0);
        CHECK(y1 == bits("0")); // node 1 hears node 2~
        CHECK(y2 == bits("1")); // node 2 hears node 1~
    }
}

TEST_CASE("channel law agrees with the independent oracle") {
    std::mt19937_64 rng(17);
    for (int m = 0; m <= 5; ++m) {
        for (int n = 0; n <= 5; ++n) {
            int q = std::max(m, n);
            for (int trial = 0; trial < 8; ++trial) {
                BitVector x1(q), x2(q);
                for (int l = 1; l <= q; ++l) {
                    x1.set(l, rng() & 1);
                    x2.set(l, rng() & 1);
                }
                auto [y1, y2] = forward_outputs(x1, x2, m, n);
                CHECK(y1 == oracle_output(x1, x2, m, n));
                CHECK(y2 == oracle_output(x2, x1, m, n));
            }
        }
    }
}

TEST_CASE("channel linearity and sender symmetry") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int m = (int)(rng() % 5), n = (int)(rng() % 5);
        int q = std::max(m, n);
        BitVector a(q), b(q), a2(q), b2(q);
        for (int l = 1; l <= q; ++l) {
            a.set(l, rng() & 1);
            b.set(l, rng() & 1);
            a2.set(l, rng() & 1);
            b2.set(l, rng() & 1);
        }
        auto [y1, y2] = forward_outputs(a, b, m, n);
        auto [z1, z2] = forward_outputs(a2, b2, m, n);
        auto [s1, s2] = forward_outputs(a ^ a2, b ^ b2, m, n);
        CHECK(s1 == (y1 ^ z1));
        CHECK(s2 == (y2 ^ z2));
        auto [w1, w2] = forward_outputs(b, a, m, n);
        CHECK(w1 == y2);
        CHECK(w2 == y1);
    }
}

TEST_CASE("config parsing round trips") {
    ChannelConfig cfg = ChannelConfig::parse("1,2/2,1");
    CHECK(cfg == ChannelConfig{1, 2, 2, 1});
    CHECK(cfg.str() == "1,2/2,1");
    CHECK_THROWS_AS(ChannelConfig::parse("1,2"), ParseError);
    CHECK_THROWS_AS(ChannelConfig::parse("1,2/x,1"), ParseError);
    CHECK_THROWS_AS(ChannelConfig::parse("1,2/2,1/3"), ParseError);
}

TEST_CASE("regime classification covers the worked configurations") {
    CHECK(classify_regime({1, 2, 2, 1}).kind == RegimeKind::R4);
    CHECK(classify_regime({1, 2, 1, 0}).kind == RegimeKind::R4); // alpha~ infinite
    CHECK(classify_regime({3, 4, 4, 3}).kind == RegimeKind::Middle);
    CHECK(classify_regime({1, 3, 1, 3}).kind == RegimeKind::R1);
    CHECK(classify_regime({2, 1, 2, 4}).kind == RegimeKind::R4p);
    CHECK(classify_regime({3, 3, 6, 1}).kind == RegimeKind::R2);
    CHECK(classify_regime({1, 3, 4, 4}).kind == RegimeKind::R3);
    CHECK(classify_regime({2, 3, 2, 1}).kind == RegimeKind::R4); // boundary 2/3 is outer
    CHECK(classify_regime({3, 2, 1, 2}).kind == RegimeKind::R4p); // boundary 3/2 is outer
    CHECK_THROWS_AS(classify_regime({0, 0, 1, 1}), DegenerateChannelError);
    CHECK_THROWS_AS(classify_regime({1, 1, 0, 0}), DegenerateChannelError);
}

TEST_CASE("mirror classification swaps primed labels") {
    std::mt19937_64 rng(31);
    auto mirror_kind = [](RegimeKind k) {
        switch (k) {
        // both-outer regimes are fixed points of the direction swap
        case RegimeKind::R1: return RegimeKind::R1;
        case RegimeKind::R2: return RegimeKind::R2p;
        case RegimeKind::R3: return RegimeKind::R3p;
        case RegimeKind::R4: return RegimeKind::R4p;
        case RegimeKind::R1p: return RegimeKind::R1p;
        case RegimeKind::R2p: return RegimeKind::R2;
        case RegimeKind::R3p: return RegimeKind::R3;
        case RegimeKind::R4p: return RegimeKind::R4;
        default: return RegimeKind::Middle;
        }
    };
    for (int trial = 0; trial < 200; ++trial) {
        ChannelConfig cfg{(int)(rng() % 6), (int)(rng() % 6), (int)(rng() % 6),
                          (int)(rng() % 6)};
        if ((cfg.m == 0 && cfg.n == 0) || (cfg.mt == 0 && cfg.nt == 0)) continue;
        RegimeLabel a = classify_regime(cfg);
        RegimeLabel b = classify_regime(cfg.mirrored());
        CHECK(b.kind == mirror_kind(a.kind));
        CHECK(a.fwd_band == b.bwd_band);
        CHECK(a.bwd_band == b.fwd_band);
    }
}
