#include "skewloc/frequency.hpp"

#include <stdexcept>

#include "skewloc/errors.hpp"

namespace skewloc {

Frequency Frequency::from_double(double omega, double dc_constant) {
    if (!(omega > 0.0) || !(omega < 1.0)) throw std::invalid_argument("Frequency: omega must lie in (0,1)");
    if (!(dc_constant > 0.0)) throw std::invalid_argument("Frequency: dc_constant must be positive");
    Frequency f;
    f.value = omega;
    f.fixed = Fixed256::from_double(omega); // exact lift
    f.dc_constant = dc_constant;
    return f;
}

Frequency Frequency::from_fixed(const Fixed256& fx, double dc_constant) {
    if (fx.is_zero()) throw std::invalid_argument("Frequency: omega must lie in (0,1)");
    if (!(dc_constant > 0.0)) throw std::invalid_argument("Frequency: dc_constant must be positive");
    Frequency f;
    f.fixed = fx;
    f.value = fx.to_double();
    f.dc_constant = dc_constant;
    return f;
}

Frequency Frequency::golden_mean(double dc_constant) {
    // (sqrt(5)-1)/2 = lim F_n / F_{n+1}; F_370 has ~256 bits, so the ratio
    // approximates to ~2^-512, far below the fixed-point granularity.
    BigUInt fa(0), fb(1); // F_0, F_1
    for (int i = 0; i < 370; ++i) {
        BigUInt next = fa;
        next.add(fb);
        fa = fb;
        fb = next;
    }
    BigUInt num = fa; // F_369
    num.shift_left(256);
    BigUInt q = num.divmod(fb); // floor(F_369 * 2^256 / F_370)
    std::uint64_t w[4];
    q.low256(w);
    return Frequency::from_fixed(Fixed256::from_words(w), dc_constant);
}

DiophantineScan check_diophantine(const Frequency& omega, std::int64_t K) {
    if (K < 1) throw std::invalid_argument("check_diophantine: K >= 1 required");
    DiophantineScan out;
    Fixed256 acc; // k * omega mod 1, exact incremental
    bool first = true;
    for (std::int64_t k = 1; k <= K; ++k) {
        acc = acc.add(omega.fixed);
        double qual = static_cast<double>(k) * static_cast<double>(k) * acc.dist_to_int();
        if (first || qual < out.min_value) {
            out.min_value = qual;
            out.worst_k = k;
            first = false;
        }
    }
    return out;
}

std::vector<std::uint64_t> convergent_denominators(const Frequency& omega, std::uint64_t limit) {
    // Euclid on (numerator, 2^256). The dyadic representation shares the
    // true expansion until denominators of order 2^128, far past any use here.
    std::vector<std::uint64_t> dens;
    BigUInt a = omega.fixed.numerator();
    BigUInt b(1);
    b.shift_left(256);
    // omega in (0,1): first quotient of b/a starts the [0; a1, a2, ...] tail.
    std::uint64_t q_prev = 0, q_cur = 1; // q_{-1}, q_0
    BigUInt hi = b, lo = a;
    while (!lo.is_zero()) {
        BigUInt rem = hi;
        BigUInt quot = rem.divmod(lo); // rem now holds hi mod lo
        std::uint64_t ai = quot.to_u64_saturating();
        // q_i = a_i * q_{i-1} + q_{i-2}, saturating well past limit
        unsigned __int128 qn = static_cast<unsigned __int128>(ai) * q_cur + q_prev;
        std::uint64_t q_next = qn > ~0ULL ? ~0ULL : static_cast<std::uint64_t>(qn);
        q_prev = q_cur;
        q_cur = q_next;
        dens.push_back(q_cur);
        if (q_cur > limit) break;
        hi = lo;
        lo = rem;
    }
    return dens;
}

std::uint64_t best_approximant(const Frequency& omega, std::uint64_t L) {
    if (L < 4) throw std::invalid_argument("best_approximant: L >= 4 required");
    auto dens = convergent_denominators(omega, L);
    std::uint64_t best = 0;
    for (std::uint64_t q : dens) {
        bool above_sqrt = static_cast<unsigned __int128>(q) * q > L;
        if (above_sqrt && q < L && q > best) best = q;
    }
    if (best == 0)
        throw NotFoundError("best_approximant: no continued-fraction denominator in (sqrt(L), L)");
    return best;
}

} // namespace skewloc
