#pragma once

#include <string>
#include <vector>

#include "twc/channel.hpp"
#include "twc/rational.hpp"

namespace twc {

struct RatePair {
    Rat fwd;
    Rat bwd;

    friend bool operator==(const RatePair&, const RatePair&) = default;
    std::string str() const { return fwd.str() + " " + bwd.str(); }
};

// One closed half-plane a*R + b*Rt <= c.
struct Ineq {
    Rat a;
    Rat b;
    Rat c;

    bool satisfied_by(const RatePair& p) const { return a * p.fwd + b * p.bwd <= c; }
    std::string str() const { return a.str() + " " + b.str() + " " + c.str(); }
};

// Conjunction of rational half-planes in the nonnegative quadrant. Every
// region built here contains (0,0) and is bounded.
struct CapacityRegion {
    std::vector<Ineq> inequalities;
};

// Non-feedback computation capacity of one direction. Total on nonnegative
// level counts; an all-zero direction yields 0 by convention.
Rat c_no(int m, int n);

// Perfect-feedback computation capacity of one direction.
Rat c_pf(int m, int n);

// The two-way computation capacity region: the per-direction perfect-feedback
// caps plus both cross/direct sum cuts.
CapacityRegion two_way_region(const ChannelConfig& cfg);

enum class BaselineKind { NoFeedback, PerfectFeedback };

// Product region from the per-direction capacities of the chosen baseline.
CapacityRegion baseline_region(const ChannelConfig& cfg, BaselineKind which);

// Exact closed-region membership.
bool contains(const CapacityRegion& region, const RatePair& p);

// All vertices of the 2-D polytope, exact, deduplicated, sorted by rate pair.
std::vector<RatePair> corner_points(const CapacityRegion& region);

enum class GainClass {
    NoFeedbackGain,
    FeedbackGainNoInteractionGain,
    NetInteractionGain,
    PerfectFeedbackAchievable,
};

std::string gain_class_name(GainClass g);

// Places a configuration in the gain taxonomy: whether interaction can beat
// the non-interactive corner, and whether it reaches the perfect-feedback
// pair outright.
GainClass interaction_gain(const ChannelConfig& cfg);

// True when the configuration sits in one of the two outer-regime windows
// whose resource holes absorb the full feedback demand of both directions,
// i.e. the whole perfect-feedback box is attainable.
bool corollary1_holds(const ChannelConfig& cfg);

} // namespace twc
