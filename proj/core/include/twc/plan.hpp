#pragma once

#include "twc/capacity.hpp"
#include "twc/decompose.hpp"
#include "twc/schemes.hpp"

namespace twc {

// The pairing vocabulary the planner emits. The lemma4 family and the two
// worked examples have executable constructions in the catalog; the lemma3
// family and the residual "rate-only" allocations are planned at rate level
// and flagged non-executable.
enum class PairingKind {
    NonFeedback,
    Example1,    // (1,2) with (2,1), both perfect
    Example2,    // (1,2) with (1,0), both perfect
    Example2Sym, // (0,1) with (2,1), both perfect
    Lemma4i,     // (0,1) with (1,0), one side favored
    Lemma4iii,   // (2,3)^i with (1,0)^j
    Lemma4iv,    // (1,2)^i with (2,1)^j
    Lemma4v,     // (2,3)^i with (2,1)^j
    Lemma4iiiSym, // (0,1)^j with (3,2)^i
    Lemma4vSym,   // (1,2)^j with (3,2)^i
    Lemma3i,     // (1,2)^i with (1,2)^j, one-to-one tradeoff
    Lemma3ii,    // (1,2)^i with (2,3)^j, one-to-one tradeoff
    RateOnly,
};

std::string pairing_kind_name(PairingKind k);

struct Pairing {
    PairingKind kind = PairingKind::RateOnly;
    bool mirror = false; // roles of the two directions are exchanged
    std::vector<std::pair<Part, Rat>> fwd;
    std::vector<std::pair<Part, Rat>> bwd;
    RatePair rate; // asymptotic contribution
    std::string note;
    bool executable = false;

    std::string str() const;
};

enum class PlanTarget { FavorForward, FavorBackward, PerfectBoth };

std::string plan_target_name(PlanTarget t);
PlanTarget parse_plan_target(const std::string& s);

// A regime-matched assembly of per-subchannel schemes with its predicted
// corner. Executable plans can be compiled into a single composite scheme.
struct SchemePlan {
    ChannelConfig config;
    RegimeLabel regime{};
    PlanTarget target = PlanTarget::PerfectBoth;
    RatePair target_corner;
    RatePair predicted;
    bool executable = false;
    std::vector<Pairing> pairings;

    std::string str() const;
};

// Multiplicity-weighted exact sum of the pairing rates.
RatePair predicted_rates(const SchemePlan& p);

// Builds the per-regime plan toward the requested corner.
SchemePlan plan(const ChannelConfig& cfg, PlanTarget target);

struct ComposeParams {
    int ex1_L = 2;
    int ex2_L = 2;
    int ex2_M = 4;
    int l4i_L = 2;
    int reps = 1;
};

// Compiles an executable plan into one scheme over the original network,
// each pairing running on its own orthogonal level chains, block horizons
// unified by repetition.
Scheme compose(const SchemePlan& p, const ComposeParams& params = {});

} // namespace twc
