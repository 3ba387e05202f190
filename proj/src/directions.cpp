#include "skewloc/directions.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "skewloc/biguint.hpp"

namespace skewloc {

DirectionVector direction_vector(int j, int d) {
    if (j < 1) throw std::invalid_argument("direction_vector: j >= 1 required");
    if (d < 2) throw std::invalid_argument("direction_vector: d >= 2 required");
    DirectionVector v;
    v.j = j;
    v.d = d;
    v.raw.reserve(static_cast<std::size_t>(d) + 1);
    v.raw.push_back(1.0);
    for (int k = d; k >= 1; --k)
        v.raw.push_back(binomial_big(static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(k)).to_double());
    double norm2 = 0.0;
    for (double c : v.raw) norm2 += c * c;
    const double inv = 1.0 / std::sqrt(norm2);
    v.components.reserve(v.raw.size());
    for (double c : v.raw) v.components.push_back(c * inv);
    return v;
}

// Partial-pivot elimination determinant; n stays tiny (d+1 <= 8 or so).
static double small_det(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

VandermondeCheck vandermonde_independent(const std::vector<int>& js, int d, double tol) {
    if (static_cast<int>(js.size()) != d + 1)
        throw std::invalid_argument("vandermonde_independent: need exactly d+1 indices");
    std::set<int> uniq(js.begin(), js.end());
    if (uniq.size() != js.size())
        throw std::invalid_argument("vandermonde_independent: indices must be distinct");

    const std::size_t n = js.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t col = 0; col < n; ++col) {
        DirectionVector v = direction_vector(js[col], d);
        for (std::size_t row = 0; row < n; ++row) m[row][col] = v.components[row];
    }
    VandermondeCheck out;
    out.det = small_det(std::move(m));
    out.independent = std::fabs(out.det) > tol;
    return out;
}

} // namespace skewloc
