#pragma once

#include <complex>
#include <vector>

namespace skewloc {

struct CMatrix {
    int n = 0;
    std::vector<std::complex<double>> a; // row-major n*n

    CMatrix() = default;
    explicit CMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

    static CMatrix identity(int size) {
        CMatrix m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::complex<double>& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const std::complex<double>& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }

    double max_abs() const;
    double norm_inf() const; // max row sum
    double frobenius() const;
};

// Gauss-Jordan inversion with partial pivoting. Throws SingularWindowError
// when a pivot falls below 1e-14 * max|A| (E numerically inside the window
// spectrum).
CMatrix lu_invert(const CMatrix& a);

// Largest singular value via power iteration on A^H A, 1e-6 relative
// tolerance. Deterministic start vector.
double op_norm_2(const CMatrix& a, double rel_tol = 1e-6);

// max_{i,j} |(A*B - I)(i,j)|, estimated over sampled columns when n is large.
double inverse_residual(const CMatrix& a, const CMatrix& inv);

struct EigenSystem {
    std::vector<double> values; // ascending
    CMatrix vectors;            // columns; empty when not requested
};

// Cyclic complex Jacobi. Rotations act componentwise, so exponentially small
// eigenvector entries are produced multiplicatively rather than drowned at
// the eps * ||A|| noise floor of reduction-based solvers.
EigenSystem hermitian_eigen(const CMatrix& a, bool with_vectors = true);

} // namespace skewloc
