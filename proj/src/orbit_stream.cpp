#include "skewloc/orbit_stream.hpp"

#include <stdexcept>

namespace skewloc {

void orbit_range(const TorusPoint& x0, const Frequency& omega,
                 std::int64_t n_begin, std::size_t count, double* const* coords) {
    if (n_begin < 0) throw std::invalid_argument("orbit_range: n_begin >= 0 required");
    const TorusPoint base = x0.precision() == Precision::Float64 ? x0 : x0.to_float64();
    const int d = base.dim();

    std::size_t filled = 0;
    std::int64_t n = n_begin;
    while (filled < count) {
        const std::int64_t block = n / kOrbitBlock;
        const std::int64_t seed_n = block * kOrbitBlock;
        const std::int64_t block_end = seed_n + kOrbitBlock;
        TorusPoint p = orbit_closed_form(base, seed_n, omega);
        // advance to the first requested point of this block
        for (std::int64_t m = seed_n; m < n; ++m) p = skew_step(p, omega);
        while (n < block_end && filled < count) {
            for (int c = 0; c < d; ++c) coords[c][filled] = p.f64()[static_cast<std::size_t>(c)];
            p = skew_step(p, omega);
            ++n;
            ++filled;
        }
    }
}

} // namespace skewloc
