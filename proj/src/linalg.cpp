#include "skewloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skewloc/errors.hpp"
#include "skewloc/rng.hpp"

namespace skewloc {

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::norm_inf() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(at(i, j));
        m = std::max(m, row);
    }
    return m;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix lu_invert(const CMatrix& a) {
    const int n = a.n;
    CMatrix work = a;
    CMatrix inv = CMatrix::identity(n);
    const double scale = a.max_abs();
    const double pivot_floor = 1e-14 * (scale > 0.0 ? scale : 1.0);

    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(work.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(work.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < pivot_floor)
            throw SingularWindowError("lu_invert: pivot collapsed; energy inside window spectrum");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(piv, j), work.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        const std::complex<double> d = 1.0 / work.at(col, col);
        for (int j = 0; j < n; ++j) {
            work.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const std::complex<double> f = work.at(r, col);
            if (f == std::complex<double>(0.0, 0.0)) continue;
            for (int j = col; j < n; ++j) work.at(r, j) -= f * work.at(col, j);
            for (int j = 0; j < n; ++j) inv.at(r, j) -= f * inv.at(col, j);
        }
    }
    return inv;
}

double op_norm_2(const CMatrix& a, double rel_tol) {
    const int n = a.n;
    if (n == 0) return 0.0;
    Rng rng(0xa11ce, static_cast<std::uint64_t>(n));
    std::vector<std::complex<double>> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    double vn = 0.0;
    for (const auto& x : v) vn += std::norm(x);
    vn = std::sqrt(vn);
    for (auto& x : v) x /= vn;

    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> u(static_cast<std::size_t>(n));
    double sigma = 0.0;
    for (int it = 0; it < 2000; ++it) {
        // w = A v
        for (int i = 0; i < n; ++i) {
            std::complex<double> s{0.0, 0.0};
            for (int j = 0; j < n; ++j) s += a.at(i, j) * v[static_cast<std::size_t>(j)];
            w[static_cast<std::size_t>(i)] = s;
        }
        double wn = 0.0;
        for (const auto& x : w) wn += std::norm(x);
        wn = std::sqrt(wn);
        if (wn == 0.0) return a.max_abs() > 0.0 ? sigma : 0.0;
        // u = A^H w
        for (int j = 0; j < n; ++j) {
            std::complex<double> s{0.0, 0.0};
            for (int i = 0; i < n; ++i) s += std::conj(a.at(i, j)) * w[static_cast<std::size_t>(i)];
            u[static_cast<std::size_t>(j)] = s;
        }
        double un = 0.0;
        for (const auto& x : u) un += std::norm(x);
        un = std::sqrt(un);
        const double sigma_new = wn; // ||A v|| with unit v
        if (it > 0 && std::fabs(sigma_new - sigma) <= rel_tol * std::max(sigma_new, 1e-300)) {
            sigma = sigma_new;
            break;
        }
        sigma = sigma_new;
        if (un == 0.0) break;
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] / un;
    }
    // a lower bound that also guards power-iteration undershoot
    return std::max(sigma, a.max_abs());
}

double inverse_residual(const CMatrix& a, const CMatrix& inv) {
    const int n = a.n;
    double worst = 0.0;
    auto column_residual = [&](int j) {
        for (int i = 0; i < n; ++i) {
            std::complex<double> s{0.0, 0.0};
            for (int k = 0; k < n; ++k) s += a.at(i, k) * inv.at(k, j);
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    };
    if (n <= 128) {
        for (int j = 0; j < n; ++j) column_residual(j);
    } else {
        Rng rng(0x5ea1, static_cast<std::uint64_t>(n));
        for (int s = 0; s < 32; ++s)
            column_residual(static_cast<int>(rng.uniform_int(0, n - 1)));
    }
    return worst;
}

EigenSystem hermitian_eigen(const CMatrix& input, bool with_vectors) {
    const int n = input.n;
    CMatrix a = input;
    CMatrix v;
    if (with_vectors) v = CMatrix::identity(n);

    const double norm_f = a.frobenius();
    const double off_tol = std::max(1e-14 * norm_f, 1e-280);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(a.at(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 60;
    int sweep = 0;
    while (off_norm() > off_tol) {
        if (++sweep > max_sweeps)
            throw NumericError("hermitian_eigen: Jacobi failed to converge");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a.at(p, q);
                const double beta = std::abs(apq);
                if (beta == 0.0) continue;
                const std::complex<double> u = apq / beta; // e^{i phi}
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * beta);
                double t;
                if (std::fabs(tau) > 1e8) {
                    t = 1.0 / (2.0 * tau); // asymptotic root, overflow-safe
                } else {
                    const double sign = tau >= 0.0 ? 1.0 : -1.0;
                    t = sign / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const std::complex<double> suc = s * std::conj(u);

                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const std::complex<double> arp = a.at(r, p);
                    const std::complex<double> arq = a.at(r, q);
                    const std::complex<double> nrp = c * arp - suc * arq;
                    const std::complex<double> nrq = s * arp + c * std::conj(u) * arq;
                    a.at(r, p) = nrp;
                    a.at(p, r) = std::conj(nrp);
                    a.at(r, q) = nrq;
                    a.at(q, r) = std::conj(nrq);
                }
                a.at(p, p) = app - t * beta;
                a.at(q, q) = aqq + t * beta;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;

                if (with_vectors) {
                    for (int r = 0; r < n; ++r) {
                        const std::complex<double> vrp = v.at(r, p);
                        const std::complex<double> vrq = v.at(r, q);
                        v.at(r, p) = c * vrp - suc * vrq;
                        v.at(r, q) = s * vrp + c * std::conj(u) * vrq;
                    }
                }
            }
        }
    }

    EigenSystem out;
    out.values.resize(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = a.at(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return diag[static_cast<std::size_t>(x)] < diag[static_cast<std::size_t>(y)]; });
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    if (with_vectors) {
        out.vectors = CMatrix(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.vectors.at(i, j) = v.at(i, order[static_cast<std::size_t>(j)]);
    }
    return out;
}

} // namespace skewloc
