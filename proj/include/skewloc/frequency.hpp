#pragma once

#include <cstdint>
#include <vector>

#include "skewloc/fixed256.hpp"

namespace skewloc {

// A frequency in (0,1) held in double and 256-bit fixed-point form.
// The two representations agree to 2^-52 by construction.
struct Frequency {
    double value = 0.0;
    Fixed256 fixed;
    double dc_constant = 0.2;

    Frequency() = default;
    static Frequency from_double(double omega, double dc_constant = 0.2);
    static Frequency from_fixed(const Fixed256& f, double dc_constant = 0.2);
    // (sqrt(5)-1)/2 to full fixed-point precision, via a Fibonacci ratio.
    static Frequency golden_mean(double dc_constant = 0.2);
};

struct DiophantineScan {
    double min_value = 0.0; // min over 0<k<=K of k^2 * ||k omega||
    std::int64_t worst_k = 0;
};

// Exact scan of k^2*||k omega|| for 0 < k <= K. The caller compares
// min_value against the frequency's dc_constant.
DiophantineScan check_diophantine(const Frequency& omega, std::int64_t K);

// Continued-fraction convergent denominators of omega, in increasing order,
// up to (and including the first exceeding) `limit`.
std::vector<std::uint64_t> convergent_denominators(const Frequency& omega, std::uint64_t limit);

// Largest convergent denominator q with sqrt(L) < q < L (both strict).
// Throws NotFoundError when the expansion has no denominator in range.
std::uint64_t best_approximant(const Frequency& omega, std::uint64_t L);

} // namespace skewloc
