#include "skewloc/fixed256.hpp"

#include <cmath>
#include <stdexcept>

namespace skewloc {

Fixed256 Fixed256::from_double(double x) {
    if (!(x >= 0.0) || x >= 1.0) throw std::invalid_argument("Fixed256::from_double: need x in [0,1)");
    Fixed256 f;
    double r = x;
    for (int i = 3; i >= 0 && r != 0.0; --i) {
        r *= 18446744073709551616.0; // 2^64, exact
        double ip = std::floor(r);
        f.w_[i] = static_cast<std::uint64_t>(ip);
        r -= ip;
    }
    return f;
}

double Fixed256::to_double() const {
    double v = 0.0;
    v += static_cast<double>(w_[0]) * 0x1.0p-256;
    v += static_cast<double>(w_[1]) * 0x1.0p-192;
    v += static_cast<double>(w_[2]) * 0x1.0p-128;
    v += static_cast<double>(w_[3]) * 0x1.0p-64;
    if (v >= 1.0) v = std::nextafter(1.0, 0.0);
    return v;
}

double Fixed256::dist_to_int() const {
    if (msb()) return Fixed256().sub(*this).to_double(); // 1 - value, mod 1
    return to_double();
}

static int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string Fixed256::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    s.reserve(66);
    for (int i = 3; i >= 0; --i)
        for (int nib = 15; nib >= 0; --nib)
            s.push_back(digits[(w_[i] >> (4 * nib)) & 0xF]);
    return s;
}

Fixed256 Fixed256::from_hex(const std::string& s) {
    std::string body = s;
    if (body.size() >= 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X'))
        body = body.substr(2);
    if (body.size() != 64) throw std::invalid_argument("Fixed256::from_hex: expected 64 hex digits");
    Fixed256 f;
    for (int i = 0; i < 64; ++i) {
        int d = hex_digit(body[static_cast<std::size_t>(i)]);
        if (d < 0) throw std::invalid_argument("Fixed256::from_hex: bad hex digit");
        int limb = 3 - i / 16;
        int nib = 15 - i % 16;
        f.w_[limb] |= static_cast<std::uint64_t>(d) << (4 * nib);
    }
    return f;
}

BigUInt Fixed256::numerator() const {
    BigUInt out;
    for (int i = 0; i < 4; ++i) {
        BigUInt part(w_[i]);
        part.shift_left(static_cast<std::size_t>(64 * i));
        out.add(part);
    }
    return out;
}

} // namespace skewloc
