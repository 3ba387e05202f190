#pragma once

#include <vector>

namespace skewloc {

// Unit vector proportional to (1, C(j,d), C(j,d-1), ..., C(j,1)); d+1 entries.
struct DirectionVector {
    int j = 0;
    int d = 0;
    std::vector<double> components; // normalized, Euclidean norm 1
    std::vector<double> raw;        // (1, C(j,d), ..., C(j,1)) before normalization
};

DirectionVector direction_vector(int j, int d);

struct VandermondeCheck {
    double det = 0.0;
    bool independent = false;
};

// Determinant of [xi_{j_1}, ..., xi_{j_{d+1}}] (columns of unit direction
// vectors); independent iff |det| exceeds the tolerance.
VandermondeCheck vandermonde_independent(const std::vector<int>& js, int d, double tol = 1e-12);

} // namespace skewloc
