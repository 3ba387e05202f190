#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skewloc/torus.hpp"

namespace skewloc {

// Canonical float64 orbit scan. Points are produced in blocks aligned to
// absolute multiples of kOrbitBlock; each block is re-seeded from the exact
// closed form, so float64 drift stays bounded by C(kOrbitBlock, d-1)*eps
// independent of how far the scan runs or how ranges are chopped up.
inline constexpr std::int64_t kOrbitBlock = 512;

// coords[c][i] = (T^{n_begin + i} x0)_c for i in [0, count).
void orbit_range(const TorusPoint& x0, const Frequency& omega,
                 std::int64_t n_begin, std::size_t count, double* const* coords);

// Scratch SoA buffer for one block of orbit points.
struct OrbitBuffer {
    explicit OrbitBuffer(int d, std::size_t capacity = static_cast<std::size_t>(kOrbitBlock))
        : storage(static_cast<std::size_t>(d) * capacity), ptrs(static_cast<std::size_t>(d)) {
        for (int c = 0; c < d; ++c) ptrs[static_cast<std::size_t>(c)] = storage.data() + static_cast<std::size_t>(c) * capacity;
    }
    double* const* data() { return ptrs.data(); }
    const double* const* cdata() const { return ptrs.data(); }
    std::vector<double> storage;
    std::vector<double*> ptrs;
};

} // namespace skewloc
