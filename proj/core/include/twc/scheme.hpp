#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "twc/channel.hpp"

namespace twc {

// The four physical nodes. N1/N2 source the forward symbols and decode the
// backward functions; N1t/N2t ("tilde") source the backward symbols and
// decode the forward functions.
enum class Node : uint8_t { N1 = 0, N2 = 1, N1t = 2, N2t = 3 };

inline bool tilde_side(Node n) { return n == Node::N1t || n == Node::N2t; }
std::string node_name(Node n);

enum class FeedbackMode : uint8_t { None, InBand, Genie };

// Sizes of the four independent source-bit families: a at node 1, b at
// node 2, at (a-tilde) at node 1t, bt at node 2t. Global bit indices are
// laid out in that order.
struct SourceLayout {
    long long na = 0, nb = 0, nat = 0, nbt = 0;

    long long dim() const { return na + nb + nat + nbt; }
    long long a(long long i) const { return i - 1; }
    long long b(long long i) const { return na + i - 1; }
    long long at(long long i) const { return na + nb + i - 1; }
    long long bt(long long i) const { return na + nb + nat + i - 1; }
    Node owner(long long bit) const {
        if (bit < na) return Node::N1;
        if (bit < na + nb) return Node::N2;
        if (bit < na + nb + nat) return Node::N1t;
        return Node::N2t;
    }
    friend bool operator==(const SourceLayout&, const SourceLayout&) = default;
};

// Row vector over GF(2) indexed by global source bits: the symbolic value
// of a signal as a function of all sources.
class LinearForm {
  public:
    LinearForm() = default;
    explicit LinearForm(long long dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

    static LinearForm unit(long long dim, long long bit) {
        LinearForm f(dim);
        f.flip(bit);
        return f;
    }

    long long dim() const { return dim_; }
    bool test(long long bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1; }
    void flip(long long bit) { words_[bit >> 6] ^= uint64_t(1) << (bit & 63); }

    LinearForm& operator^=(const LinearForm& o) {
        if (o.dim_ != dim_) throw DimensionError("LinearForm xor: dimension mismatch");
        for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    friend LinearForm operator^(LinearForm x, const LinearForm& y) { return x ^= y; }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;

    bool zero() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }
    long long lowest_set() const { // -1 if zero
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return (long long)i * 64 + __builtin_ctzll(words_[i]);
        return -1;
    }
    // Evaluate at a concrete source assignment (one byte per bit, 0/1).
    bool eval(const std::vector<uint8_t>& bits) const {
        uint64_t acc = 0;
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                acc ^= bits[(i << 6) + __builtin_ctzll(w)];
                w &= w - 1;
            }
        }
        return acc & 1;
    }

  private:
    long long dim_ = 0;
    std::vector<uint64_t> words_;
};

// One additive term of an encoder or decoder: either one of the node's own
// source bits, one level of one of its past receptions, or (genie mode) one
// level of a receiver's reception delivered out of band.
struct Tap {
    enum class Kind : uint8_t { Source, Rx, Genie };
    Kind kind = Kind::Source;
    long long bit = 0; // Source
    int slot = 0;      // Rx / Genie
    int level = 0;     // Rx / Genie, 1-based
    int stream = 0;    // Genie: 0 = receiver 1's view, 1 = receiver 2's view

    friend bool operator==(const Tap&, const Tap&) = default;
    friend auto operator<=>(const Tap& x, const Tap& y) {
        return std::tie(x.kind, x.bit, x.slot, x.level, x.stream) <=>
               std::tie(y.kind, y.bit, y.slot, y.level, y.stream);
    }
};

// A scheduled decode: at `slot`, `node` outputs the value of function
// `index` (forward F or backward F-tilde) as the XOR of `taps`.
struct DecodeEvent {
    Node node;
    bool backward_fn = false;
    int index = 0;
    int slot = 0;
    std::vector<Tap> taps;
};

// A fully realized causal coding scheme: per-slot per-node tap recipes for
// both channel uses, the symbolic transmission schedule, and the decode
// calendar. Construction guarantees every tap references strictly available
// history; schemes are immutable once built and safe to share across runs.
struct Scheme {
    std::string id;
    ChannelConfig config;
    SourceLayout sources;
    int slots = 0;
    int fwd_functions = 0; // demanded forward functions F_1..F_K
    int bwd_functions = 0; // demanded backward functions
    FeedbackMode feedback = FeedbackMode::InBand;
    bool linear = true;

    // tx[slot-1][node][level-1] -> taps; level count is q() forward, qt() backward
    std::vector<std::array<std::vector<std::vector<Tap>>, 4>> tx;
    // symbolic value of every scheduled transmission level
    std::vector<std::array<std::vector<LinearForm>, 4>> tx_form;
    std::vector<DecodeEvent> decodes;

    // Slots whose forward transmissions are identically zero for all source
    // values; a schedule property read off the linear encoding maps.
    int vacant_forward_slots() const;
};

} // namespace twc
