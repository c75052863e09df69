#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twc/errors.hpp"

namespace twc {

// Fixed-length signal vector over GF(2). Level 1 is the top
// (least-attenuated) level, level q the bottom. Levels are packed into
// machine words with level 1 at the low-order end; the packed order is an
// internal choice, the level semantics are not.
class BitVector {
  public:
    BitVector() : size_(0) {}
    explicit BitVector(int size) : size_(size), words_((size + 63) / 64, 0) {
        if (size < 0) throw DomainError("BitVector: negative size");
    }

    static BitVector zeros(int size) { return BitVector(size); }

    // Parses a top-to-bottom bit string, e.g. "10" for (1,0).
    static BitVector parse(const std::string& s) {
        BitVector v((int)s.size());
        for (int i = 0; i < (int)s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1') throw ParseError("bad bit string: '" + s + "'");
            v.set(i + 1, s[i] == '1');
        }
        return v;
    }

    int size() const { return size_; }

    // level is 1-based, level 1 = top.
    bool get(int level) const {
        check_level(level);
        return (words_[(level - 1) >> 6] >> ((level - 1) & 63)) & 1;
    }
    void set(int level, bool value) {
        check_level(level);
        uint64_t mask = uint64_t(1) << ((level - 1) & 63);
        if (value)
            words_[(level - 1) >> 6] |= mask;
        else
            words_[(level - 1) >> 6] &= ~mask;
    }
    void flip(int level) { set(level, !get(level)); }

    BitVector& operator^=(const BitVector& other) {
        if (other.size_ != size_)
            throw DimensionError("BitVector xor: length mismatch (" + std::to_string(size_) +
                                 " vs " + std::to_string(other.size_) + ")");
        for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    friend bool operator!=(const BitVector& a, const BitVector& b) { return !(a == b); }

    bool all_zero() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    // Top-to-bottom rendering; the empty vector renders as "-".
    std::string str() const {
        if (size_ == 0) return "-";
        std::string s(size_, '0');
        for (int i = 1; i <= size_; ++i)
            if (get(i)) s[i - 1] = '1';
        return s;
    }

  private:
    void check_level(int level) const {
        if (level < 1 || level > size_)
            throw DomainError("BitVector: level " + std::to_string(level) + " out of range 1.." +
                              std::to_string(size_));
    }

    int size_;
    std::vector<uint64_t> words_;
};

// Applies the shift matrix s times: content moves toward the bottom, the top
// s levels clear. shift_down(x, q) annihilates any length-q vector.
inline BitVector shift_down(const BitVector& x, int s) {
    if (s < 0 || s > x.size())
        throw DomainError("shift_down: shift " + std::to_string(s) + " out of range 0.." +
                          std::to_string(x.size()));
    BitVector out(x.size());
    for (int level = s + 1; level <= x.size(); ++level) out.set(level, x.get(level - s));
    return out;
}

// Recovers the unique transmitted pair from both received signals of an
// asymmetric (m != n) direction. Realizes the inversion of I + G^(2|n-m|)
// applied to y1 + G^(|n-m|) y2 by forward substitution over GF(2); the
// second input then falls out level by level.
std::pair<BitVector, BitVector> reconstruct_inputs(const BitVector& y1, const BitVector& y2,
                                                   int m, int n);

} // namespace twc
