#include "twc/channel.hpp"

namespace twc {

ChannelConfig ChannelConfig::parse(const std::string& text) {
    int vals[4];
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t end = text.find_first_of(",/", pos);
        std::string piece =
            end == std::string::npos ? text.substr(pos) : text.substr(pos, end - pos);
        try {
            size_t used = 0;
            vals[i] = std::stoi(piece, &used);
            if (used != piece.size() || vals[i] < 0) throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("bad channel config: '" + text + "' (want m,n/mt,nt)");
        }
        char expect = i == 1 ? '/' : ',';
        if (i < 3) {
            if (end == std::string::npos || text[end] != expect)
                throw ParseError("bad channel config: '" + text + "' (want m,n/mt,nt)");
            pos = end + 1;
        } else if (end != std::string::npos) {
            throw ParseError("bad channel config: '" + text + "' (trailing input)");
        }
    }
    return {vals[0], vals[1], vals[2], vals[3]};
}

std::string ChannelConfig::str() const {
    return std::to_string(m) + "," + std::to_string(n) + "/" + std::to_string(mt) + "," +
           std::to_string(nt);
}

std::pair<BitVector, BitVector> forward_outputs(const BitVector& x1, const BitVector& x2, int m,
                                                int n) {
    int q = std::max(m, n);
    if (x1.size() != q || x2.size() != q)
        throw DimensionError("forward_outputs: inputs must have length max(m,n)");
    BitVector y1 = shift_down(x1, q - n) ^ shift_down(x2, q - m);
    BitVector y2 = shift_down(x1, q - m) ^ shift_down(x2, q - n);
    return {y1, y2};
}

std::pair<BitVector, BitVector> backward_outputs(const BitVector& x1t, const BitVector& x2t,
                                                 int mt, int nt) {
    return forward_outputs(x1t, x2t, mt, nt);
}

Band band_of(const Ratio& r) {
    if (r.undefined()) throw DegenerateChannelError("band_of: ratio undefined (0/0 direction)");
    if (r.infinite()) return Band::HighOuter;
    const Rat& v = r.value();
    if (v <= Rat(2, 3)) return Band::LowOuter;
    if (v < Rat(1)) return Band::LowMid;
    if (v == Rat(1)) return Band::One;
    if (v < Rat(3, 2)) return Band::HighMid;
    return Band::HighOuter;
}

std::string band_name(Band b) {
    switch (b) {
    case Band::LowOuter: return "[0,2/3]";
    case Band::LowMid: return "(2/3,1)";
    case Band::One: return "{1}";
    case Band::HighMid: return "(1,3/2)";
    case Band::HighOuter: return "[3/2,inf]";
    }
    return "?";
}

std::string RegimeLabel::name() const {
    const char* names[] = {"R1", "R2", "R3", "R4", "R1'", "R2'", "R3'", "R4'", "MIDDLE"};
    return names[(int)kind];
}

RegimeLabel classify_regime(const ChannelConfig& cfg) {
    if (cfg.m == 0 && cfg.n == 0)
        throw DegenerateChannelError("classify_regime: forward direction has no levels");
    if (cfg.mt == 0 && cfg.nt == 0)
        throw DegenerateChannelError("classify_regime: backward direction has no levels");
    Band f = band_of(cfg.alpha());
    Band b = band_of(cfg.alpha_t());

    RegimeKind kind;
    if (f == Band::LowOuter) {
        kind = b == Band::LowOuter ? RegimeKind::R1
               : b == Band::HighOuter ? RegimeKind::R4
                                      : RegimeKind::R3;
    } else if (f == Band::HighOuter) {
        kind = b == Band::LowOuter ? RegimeKind::R4p
               : b == Band::HighOuter ? RegimeKind::R1p
                                      : RegimeKind::R2p;
    } else { // forward ratio in a middle band
        kind = b == Band::LowOuter ? RegimeKind::R3p
               : b == Band::HighOuter ? RegimeKind::R2
                                      : RegimeKind::Middle;
    }
    return {kind, f, b};
}

} // namespace twc
