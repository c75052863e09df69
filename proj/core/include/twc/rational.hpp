#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "twc/errors.hpp"

namespace twc {

// Exact rational number. All rate and region arithmetic goes through this
// type; nothing in the capacity logic touches floating point. Operands in
// this domain are small (level counts and their thirds), so 64-bit terms
// with 128-bit intermediates never overflow.
class Rat {
  public:
    constexpr Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend Rat operator+(const Rat& x, const Rat& y) {
        return reduce(wide(x.num_) * y.den_ + wide(y.num_) * x.den_, wide(x.den_) * y.den_);
    }
    friend Rat operator-(const Rat& x, const Rat& y) {
        return reduce(wide(x.num_) * y.den_ - wide(y.num_) * x.den_, wide(x.den_) * y.den_);
    }
    friend Rat operator*(const Rat& x, const Rat& y) {
        return reduce(wide(x.num_) * y.num_, wide(x.den_) * y.den_);
    }
    friend Rat operator/(const Rat& x, const Rat& y) {
        if (y.num_ == 0) throw DomainError("Rat: division by zero");
        return reduce(wide(x.num_) * y.den_, wide(x.den_) * y.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }
    Rat& operator+=(const Rat& y) { return *this = *this + y; }
    Rat& operator-=(const Rat& y) { return *this = *this - y; }
    Rat& operator*=(const Rat& y) { return *this = *this * y; }

    friend bool operator==(const Rat& x, const Rat& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }
    friend bool operator<(const Rat& x, const Rat& y) {
        return (__int128)x.num_ * y.den_ < (__int128)y.num_ * x.den_;
    }
    friend bool operator>(const Rat& x, const Rat& y) { return y < x; }
    friend bool operator<=(const Rat& x, const Rat& y) { return !(y < x); }
    friend bool operator>=(const Rat& x, const Rat& y) { return !(x < y); }

    // "p/q" in lowest terms, or just "p" for integers.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" or "p/q".
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad rational: '" + s + "'");
        }
    }

  private:
    static __int128 wide(long long v) { return (__int128)v; }

    static Rat reduce(__int128 n, __int128 d) {
        if (d == 0) throw DomainError("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw DomainError("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

// A channel level ratio m/n. Unlike Rat this admits the two sentinel values
// needed by the model: +infinity (positive numerator over zero) and
// undefined (0/0, an all-zero direction).
class Ratio {
  public:
    enum class Kind { Finite, Infinite, Undefined };

    static Ratio of(long long num, long long den) {
        Ratio r;
        if (den == 0) {
            r.kind_ = num == 0 ? Kind::Undefined : Kind::Infinite;
        } else {
            r.kind_ = Kind::Finite;
            r.value_ = Rat(num, den);
        }
        return r;
    }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    bool infinite() const { return kind_ == Kind::Infinite; }
    bool undefined() const { return kind_ == Kind::Undefined; }
    const Rat& value() const {
        if (!finite()) throw DomainError("Ratio: no finite value");
        return value_;
    }

    // Comparisons against finite thresholds; undefined compares false.
    bool le(const Rat& t) const { return finite() && value_ <= t; }
    bool lt(const Rat& t) const { return finite() && value_ < t; }
    bool ge(const Rat& t) const { return infinite() || (finite() && value_ >= t); }
    bool gt(const Rat& t) const { return infinite() || (finite() && value_ > t); }
    bool eq(const Rat& t) const { return finite() && value_ == t; }

    std::string str() const {
        if (infinite()) return "inf";
        if (undefined()) return "undef";
        return value_.str();
    }

  private:
    Kind kind_ = Kind::Undefined;
    Rat value_;
};

} // namespace twc
