#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace skewloc {

// Little-endian base-2^64 unsigned integer. Only what binomial coefficients
// and continued-fraction Euclid need: mul/div by a word, shifts, compare,
// subtract, and bitwise long division.
class BigUInt {
  public:
    BigUInt() = default;
    explicit BigUInt(std::uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }
    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        std::size_t top = 64;
        std::uint64_t hi = limbs_.back();
        while (!(hi & (1ULL << 63))) { hi <<= 1; --top; }
        return 64 * (limbs_.size() - 1) + top;
    }

    bool bit(std::size_t i) const {
        std::size_t limb = i / 64;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i % 64)) & 1ULL;
    }

    void mul_u64(std::uint64_t m) {
        unsigned __int128 carry = 0;
        for (auto& w : limbs_) {
            unsigned __int128 p = static_cast<unsigned __int128>(w) * m + carry;
            w = static_cast<std::uint64_t>(p);
            carry = p >> 64;
        }
        if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
        trim();
    }

    // Exact division by a word; throws if a remainder is left.
    void divexact_u64(std::uint64_t d) {
        unsigned __int128 rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | limbs_[i];
            limbs_[i] = static_cast<std::uint64_t>(cur / d);
            rem = cur % d;
        }
        if (rem != 0) throw std::logic_error("BigUInt::divexact_u64: inexact division");
        trim();
    }

    // Low 256 bits as four little-endian words (value mod 2^256).
    void low256(std::uint64_t out[4]) const {
        for (int i = 0; i < 4; ++i)
            out[i] = i < static_cast<int>(limbs_.size()) ? limbs_[i] : 0;
    }

    double to_double() const {
        double v = 0.0;
        for (std::size_t i = limbs_.size(); i-- > 0;)
            v = v * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
        return v;
    }

    std::uint64_t to_u64_saturating() const {
        if (limbs_.empty()) return 0;
        if (limbs_.size() > 1) return ~0ULL;
        return limbs_[0];
    }

    void shift_left(std::size_t bits) {
        if (is_zero() || bits == 0) return;
        const std::size_t words = bits / 64, rem = bits % 64;
        limbs_.insert(limbs_.begin(), words, 0);
        if (rem) {
            std::uint64_t carry = 0;
            for (std::size_t i = words; i < limbs_.size(); ++i) {
                std::uint64_t nw = (limbs_[i] << rem) | carry;
                carry = limbs_[i] >> (64 - rem);
                limbs_[i] = nw;
            }
            if (carry) limbs_.push_back(carry);
        }
    }

    static int compare(const BigUInt& a, const BigUInt& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
        return 0;
    }

    void add(const BigUInt& b) {
        if (b.limbs_.size() > limbs_.size()) limbs_.resize(b.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t bw = i < b.limbs_.size() ? b.limbs_[i] : 0;
            std::uint64_t s1 = limbs_[i] + bw;
            std::uint64_t c1 = s1 < bw;
            std::uint64_t s2 = s1 + carry;
            std::uint64_t c2 = s2 < carry;
            limbs_[i] = s2;
            carry = c1 | c2;
        }
        if (carry) limbs_.push_back(1);
    }

    // this -= b; requires this >= b.
    void sub(const BigUInt& b) {
        std::uint64_t borrow = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t bw = i < b.limbs_.size() ? b.limbs_[i] : 0;
            std::uint64_t d1 = limbs_[i] - bw;
            std::uint64_t borrow1 = limbs_[i] < bw;
            std::uint64_t d2 = d1 - borrow;
            std::uint64_t borrow2 = d1 < borrow;
            limbs_[i] = d2;
            borrow = borrow1 | borrow2;
        }
        if (borrow) throw std::logic_error("BigUInt::sub: negative result");
        trim();
    }

    // Schoolbook binary long division: returns quotient, leaves remainder in *this.
    BigUInt divmod(const BigUInt& divisor) {
        if (divisor.is_zero()) throw std::logic_error("BigUInt::divmod: divide by zero");
        BigUInt quotient;
        if (compare(*this, divisor) < 0) return quotient;
        const std::size_t shift = bit_length() - divisor.bit_length();
        BigUInt d = divisor;
        d.shift_left(shift);
        for (std::size_t i = shift + 1; i-- > 0;) {
            quotient.shift_left(1);
            if (compare(*this, d) >= 0) {
                sub(d);
                quotient.set_bit0();
            }
            d.shift_right1();
        }
        quotient.trim();
        return quotient;
    }

  private:
    void set_bit0() {
        if (limbs_.empty()) limbs_.push_back(1);
        else limbs_[0] |= 1ULL;
    }
    void shift_right1() {
        std::uint64_t carry = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t nw = (limbs_[i] >> 1) | (carry << 63);
            carry = limbs_[i] & 1ULL;
            limbs_[i] = nw;
        }
        trim();
    }
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint64_t> limbs_;
};

// C(n, k) exactly, via k multiply/exact-divide steps.
inline BigUInt binomial_big(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigUInt(0);
    if (k > n - k) k = n - k;
    BigUInt b(1);
    for (std::uint64_t i = 1; i <= k; ++i) {
        b.mul_u64(n - k + i);
        b.divexact_u64(i);
    }
    return b;
}

} // namespace skewloc
