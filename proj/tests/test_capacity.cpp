#include <doctest.h>

#include "twc/capacity.hpp"

using namespace twc;

namespace {

// Independent evaluation of the closed-form capacities, written directly
// from the case splits.
Rat oracle_c_no(int m, int n) {
    if (m == 0 && n == 0) return Rat(0);
    if (m < n) return std::min(Rat(m), Rat(2) * Rat(n) / Rat(3));
    if (m > n) return std::min(Rat(n), Rat(2) * Rat(m) / Rat(3));
    return Rat(n);
}
Rat oracle_c_pf(int m, int n) {
    if (m == 0 && n == 0) return Rat(0);
    if (m < n) return Rat(2) * Rat(n) / Rat(3);
    if (m > n) return Rat(2) * Rat(m) / Rat(3);
    return Rat(n);
}

bool region_subset(const CapacityRegion& inner, const CapacityRegion& outer) {
    for (const RatePair& c : corner_points(inner))
        if (!contains(outer, c)) return false;
    return true;
}

} // namespace

TEST_CASE("closed-form capacities match the independent case split") {
    for (int m = 0; m <= 12; ++m) {
        for (int n = 0; n <= 12; ++n) {
            CHECK(c_no(m, n) == oracle_c_no(m, n));
            CHECK(c_pf(m, n) == oracle_c_pf(m, n));
        }
    }
    CHECK(c_no(1, 2) == Rat(1));
    CHECK(c_no(2, 3) == Rat(2));
    CHECK(c_no(1, 0) == Rat(0));
    CHECK(c_pf(1, 2) == Rat(4, 3));
    CHECK(c_pf(2, 1) == Rat(4, 3));
    CHECK(c_pf(1, 0) == Rat(2, 3));
    CHECK(c_pf(3, 3) == Rat(3));
}

TEST_CASE("per-direction capacities never exceed the level count") {
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n) {
            CHECK(c_no(m, n) <= c_pf(m, n));
            CHECK(c_pf(m, n) <= Rat(std::max(m, n)));
        }
}

TEST_CASE("the two-way region carries the four capacity constraints") {
    CapacityRegion r = two_way_region({1, 2, 2, 1});
    CHECK(contains(r, {Rat(4, 3), Rat(4, 3)}));
    CHECK_FALSE(contains(r, {Rat(4, 3), Rat(4, 3) + Rat(1, 1000)}));
    CHECK(contains(r, {Rat(0), Rat(0)}));

    CapacityRegion r23 = two_way_region({2, 3, 2, 1});
    auto corners = corner_points(r23);
    CHECK(std::find(corners.begin(), corners.end(), RatePair{Rat(2), Rat(4, 3)}) !=
          corners.end());

    CapacityRegion zero = two_way_region({0, 0, 0, 0});
    auto zc = corner_points(zero);
    REQUIRE(zc.size() == 1);
    CHECK(zc[0] == RatePair{Rat(0), Rat(0)});
}

TEST_CASE("baseline regions are the capacity boxes") {
    CapacityRegion no = baseline_region({1, 2, 2, 1}, BaselineKind::NoFeedback);
    CHECK(contains(no, {Rat(1), Rat(1)}));
    CHECK_FALSE(contains(no, {Rat(1) + Rat(1, 100), Rat(0)}));
    CapacityRegion pf = baseline_region({1, 2, 2, 1}, BaselineKind::PerfectFeedback);
    CHECK(contains(pf, {Rat(4, 3), Rat(4, 3)}));
    CapacityRegion sq = baseline_region({3, 3, 3, 3}, BaselineKind::NoFeedback);
    CHECK(contains(sq, {Rat(3), Rat(3)}));
}

TEST_CASE("corner enumeration is exact, sorted and deduplicated") {
    CapacityRegion unit;
    unit.inequalities = {{Rat(1), Rat(0), Rat(1)},
                         {Rat(0), Rat(1), Rat(1)},
                         {Rat(-1), Rat(0), Rat(0)},
                         {Rat(0), Rat(-1), Rat(0)}};
    auto corners = corner_points(unit);
    REQUIRE(corners.size() == 4);
    CHECK(corners[0] == RatePair{Rat(0), Rat(0)});
    CHECK(corners[1] == RatePair{Rat(0), Rat(1)});
    CHECK(corners[2] == RatePair{Rat(1), Rat(0)});
    CHECK(corners[3] == RatePair{Rat(1), Rat(1)});

    // frozen by hand: caps 8/3 and 4/3 sit inside both sum bounds of 5
    auto c = corner_points(two_way_region({4, 3, 1, 2}));
    REQUIRE(c.size() == 4);
    CHECK(c[3] == RatePair{Rat(8, 3), Rat(4, 3)});

    auto c2 = corner_points(two_way_region({1, 2, 1, 0}));
    CHECK(std::find(c2.begin(), c2.end(), RatePair{Rat(4, 3), Rat(2, 3)}) != c2.end());
}

TEST_CASE("region inclusion chain holds across a parameter grid") {
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (int mt = 0; mt <= 4; ++mt)
                for (int nt = 0; nt <= 4; ++nt) {
                    ChannelConfig cfg{m, n, mt, nt};
                    CapacityRegion no = baseline_region(cfg, BaselineKind::NoFeedback);
                    CapacityRegion tw = two_way_region(cfg);
                    CapacityRegion pf = baseline_region(cfg, BaselineKind::PerfectFeedback);
                    REQUIRE(region_subset(no, tw));
                    REQUIRE(region_subset(tw, pf));
                }
}

TEST_CASE("gain classification matches the worked configurations") {
    CHECK(interaction_gain({1, 2, 2, 1}) == GainClass::PerfectFeedbackAchievable);
    CHECK(interaction_gain({3, 4, 4, 3}) == GainClass::NoFeedbackGain);
    CHECK(interaction_gain({1, 3, 1, 3}) == GainClass::FeedbackGainNoInteractionGain);
    CHECK(interaction_gain({0, 0, 0, 0}) == GainClass::NoFeedbackGain);
    CHECK(interaction_gain({1, 2, 4, 2}) == GainClass::PerfectFeedbackAchievable);
}

TEST_CASE("corollary 1 holds exactly where the resource holes suffice") {
    CHECK(corollary1_holds({1, 2, 2, 1}));   // 1/3 <= 2/3 and 1/3 <= 2/3
    CHECK(corollary1_holds({1, 2, 1, 0}));   // 1/3 <= 1/3 and 2/3 <= 2/3
    CHECK(corollary1_holds({1, 2, 4, 2}));   // 1/3 <= 4/3 and 2/3 <= 2/3
    CHECK_FALSE(corollary1_holds({3, 4, 4, 3}));
    CHECK_FALSE(corollary1_holds({1, 3, 1, 3}));
}

TEST_CASE("corollary 1 forces the perfect-feedback class and the sum bounds") {
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n)
            for (int mt = 0; mt <= 6; ++mt)
                for (int nt = 0; nt <= 6; ++nt) {
                    ChannelConfig cfg{m, n, mt, nt};
                    if (!corollary1_holds(cfg)) continue;
                    Rat cpf = c_pf(m, n), cpft = c_pf(mt, nt);
                    bool both_gain = cpf > c_no(m, n) && cpft > c_no(mt, nt);
                    if (both_gain)
                        REQUIRE(interaction_gain(cfg) == GainClass::PerfectFeedbackAchievable);
                    if (cfg.alpha().lt(Rat(2, 3)) && cfg.alpha_t().gt(Rat(3, 2))) {
                        Rat lhs = Rat(2 * n) / Rat(3) + Rat(2 * mt) / Rat(3);
                        REQUIRE(lhs <= Rat(m + mt));
                        REQUIRE(lhs <= Rat(n + nt));
                    }
                }
}

TEST_CASE("rationals stay exact end to end") {
    CHECK(Rat(4, 6) == Rat(2, 3));
    CHECK(Rat(2, 3).str() == "2/3");
    CHECK(Rat(-4, 6).str() == "-2/3");
    CHECK(Rat(7).str() == "7");
    CHECK(Rat::parse("4/3") == Rat(4, 3));
    CHECK(Rat::parse("-2") == Rat(-2));
    CHECK_THROWS_AS(Rat::parse("x"), ParseError);
    CHECK_THROWS_AS(Rat(1, 0), DomainError);
    Ratio inf = Ratio::of(3, 0);
    CHECK(inf.infinite());
    CHECK(inf.ge(Rat(3, 2)));
    CHECK(Ratio::of(0, 0).undefined());
}
