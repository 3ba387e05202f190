#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "skewloc/biguint.hpp"

namespace skewloc {

// A point of the circle R/Z held as a 256-bit binary fraction
// value = (w0 + w1*2^64 + w2*2^128 + w3*2^192) / 2^256 in [0,1).
// Addition and integer multiplication mod 1 are exact: mod 1 is mod 2^256
// on the numerator, which is just dropped carries.
class Fixed256 {
  public:
    Fixed256() : w_{0, 0, 0, 0} {}

    static Fixed256 from_words(const std::uint64_t w[4]) {
        Fixed256 f;
        for (int i = 0; i < 4; ++i) f.w_[i] = w[i];
        return f;
    }

    // Exact lift of a double in [0,1). Bits below 2^-256 are dropped.
    static Fixed256 from_double(double x);

    // Nearest-down rounding of the fraction to a double.
    double to_double() const;

    // Distance to the nearest integer as a double.
    double dist_to_int() const;

    Fixed256 add(const Fixed256& o) const {
        Fixed256 r;
        unsigned __int128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 s = static_cast<unsigned __int128>(w_[i]) + o.w_[i] + carry;
            r.w_[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        return r; // carry dropped: mod 1
    }

    Fixed256 sub(const Fixed256& o) const {
        Fixed256 r;
        std::uint64_t borrow = 0;
        for (int i = 0; i < 4; ++i) {
            std::uint64_t d1 = w_[i] - o.w_[i];
            std::uint64_t b1 = w_[i] < o.w_[i];
            r.w_[i] = d1 - borrow;
            std::uint64_t b2 = d1 < borrow;
            borrow = b1 | b2;
        }
        return r; // wraparound: mod 1
    }

    // this * m mod 1 for a 64-bit integer m.
    Fixed256 mul_u64(std::uint64_t m) const {
        Fixed256 r;
        unsigned __int128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 p = static_cast<unsigned __int128>(w_[i]) * m + carry;
            r.w_[i] = static_cast<std::uint64_t>(p);
            carry = p >> 64;
        }
        return r;
    }

    // this * B mod 1 for an arbitrary non-negative integer B: only
    // B mod 2^256 can contribute, so reduce first and take the low
    // 256 bits of the 4x4 limb product.
    Fixed256 mul_big(const BigUInt& b) const {
        std::uint64_t m[4];
        b.low256(m);
        Fixed256 r;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 carry = 0;
            for (int j = 0; j + i < 4; ++j) {
                unsigned __int128 p = static_cast<unsigned __int128>(w_[j]) * m[i] +
                                      r.w_[i + j] + carry;
                r.w_[i + j] = static_cast<std::uint64_t>(p);
                carry = p >> 64;
            }
        }
        return r;
    }

    bool operator==(const Fixed256& o) const { return w_ == o.w_; }
    bool operator<(const Fixed256& o) const {
        for (int i = 4; i-- > 0;)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }

    bool is_zero() const { return w_[0] == 0 && w_[1] == 0 && w_[2] == 0 && w_[3] == 0; }
    bool msb() const { return w_[3] >> 63; } // value >= 1/2

    const std::array<std::uint64_t, 4>& words() const { return w_; }

    // 64 hex digits, most significant first, "0x" prefixed.
    std::string to_hex() const;
    static Fixed256 from_hex(const std::string& s);

    // Numerator as a BigUInt (for continued fractions against 2^256).
    BigUInt numerator() const;

  private:
    std::array<std::uint64_t, 4> w_;
};

} // namespace skewloc
