#pragma once

#include <string>
#include <utility>

#include "twc/gf2.hpp"
#include "twc/rational.hpp"

namespace twc {

// Level counts of the four-node full-duplex deterministic network. Both
// directions are internally symmetric: n (resp. nt) direct-link levels and
// m (resp. mt) cross-link levels.
struct ChannelConfig {
    int m = 0;  // forward cross
    int n = 0;  // forward direct
    int mt = 0; // backward cross
    int nt = 0; // backward direct

    int q() const { return std::max(m, n); }
    int qt() const { return std::max(mt, nt); }

    Ratio alpha() const { return Ratio::of(m, n); }
    Ratio alpha_t() const { return Ratio::of(mt, nt); }
    Ratio gamma() const { return Ratio::of(nt, n); }

    ChannelConfig mirrored() const { return {mt, nt, m, n}; }

    // Textual form used by every CLI command, e.g. "1,2/2,1".
    static ChannelConfig parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

// One use of the forward channel: y1 = G^(q-n) x1 + G^(q-m) x2 and
// symmetrically for y2, with q = max(m,n).
std::pair<BitVector, BitVector> forward_outputs(const BitVector& x1, const BitVector& x2, int m,
                                                int n);

// Identical map with the backward parameters; kept separate so call sites
// read in the direction they mean.
std::pair<BitVector, BitVector> backward_outputs(const BitVector& x1t, const BitVector& x2t,
                                                 int mt, int nt);

// Ratio bands used for regime classification. Boundaries 2/3 and 3/2 belong
// to the outer bands; alpha = 1 is its own band.
enum class Band { LowOuter, LowMid, One, HighMid, HighOuter };

Band band_of(const Ratio& r);
std::string band_name(Band b);

enum class RegimeKind { R1, R2, R3, R4, R1p, R2p, R3p, R4p, Middle };

struct RegimeLabel {
    RegimeKind kind;
    Band fwd_band;
    Band bwd_band;

    std::string name() const;
    friend bool operator==(const RegimeLabel&, const RegimeLabel&) = default;
};

// Maps the (alpha, alpha~) band pair to its canonical regime. Throws
// DegenerateChannelError when a direction has no levels at all.
RegimeLabel classify_regime(const ChannelConfig& cfg);

} // namespace twc
