#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "skewloc/frequency.hpp"
#include "skewloc/torus.hpp"
#include "skewloc/trigpoly.hpp"

namespace skewloc {

// Off-diagonal family phi_k, k = 1..K_max; k outside that range acts as zero.
struct HoppingFamily {
    double gamma = 0.0;
    double C1 = 1.0;
    int K_max = 0;
    std::vector<TrigPoly> phis; // phis[k-1] is phi_k

    const TrigPoly* phi(std::int64_t k) const {
        if (k < 1 || k > K_max) return nullptr;
        return &phis[static_cast<std::size_t>(k - 1)];
    }
};

// Data of the operator family: diagonal v(T^m x), hoppings phi_{m-n}(T^m x).
struct OperatorSpec {
    int d = 3;
    Frequency omega;
    TrigPoly v{3, true};
    HoppingFamily hopping;
    TorusPoint x0;
    std::uint64_t seed = 0; // sampling seed echo (0 when hand-built)
    int v_degree = 0;
};

struct SampleParams {
    std::uint64_t seed = 1;
    int d = 3;
    double gamma = 1e-3;
    double C1 = 2.0;
    int K_max = 20;
    int v_degree = 2;
};

// Deterministic in the seed. v: dense conjugate-symmetric coefficients on the
// degree <= v_degree box, O(1) sizes, guaranteed nonconstant. phi_k: up to 3
// random terms of degree < max(1, k^C1), rescaled so the grid sup-norm
// estimate passes the gamma e^{-k} cap with margin. omega: golden mean.
OperatorSpec sample_random_spec(const SampleParams& params);

// Raw grid maximum of |p| (64 points per axis on min(d,3) axes; deterministic
// random slices for the remaining axes).
double grid_max_modulus(const TrigPoly& p);
// The admissibility estimate: 2 * grid max.
inline double sup_norm_estimate(const TrigPoly& p) { return 2.0 * grid_max_modulus(p); }

// Grid bounds for the potential plus an exact Lipschitz bound from the
// coefficients; used by spectrum-confinement checks.
struct PotentialRange {
    double grid_min = 0.0;
    double grid_max = 0.0;
    double lipschitz = 0.0; // |v(x)-v(y)| <= lipschitz * ||x-y||_1-ish bound
};
PotentialRange potential_range(const TrigPoly& v);

// Empty when the spec passes all admissibility invariants; otherwise one
// human-readable violation per entry.
std::vector<std::string> check_spec_invariants(const OperatorSpec& spec);

// A(m,n) at base x0 (no energy shift).
std::complex<double> matrix_entry(const OperatorSpec& spec, std::int64_t m, std::int64_t n);

// Dense Hermitian window R_[a,b](H(x)-E)R_[a,b].
struct WindowMatrix {
    std::int64_t a = 0, b = 0;
    double E = 0.0;
    int size = 0;
    TorusPoint base;
    std::vector<std::complex<double>> entries; // row-major, size*size

    std::complex<double>& at(int i, int j) { return entries[static_cast<std::size_t>(i) * size + j]; }
    const std::complex<double>& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * size + j];
    }
};

inline constexpr std::int64_t kMaxWindow = 4096; // b - a guard

WindowMatrix assemble_window(const OperatorSpec& spec, std::int64_t a, std::int64_t b, double E);
// Same, with the orbit based at x instead of spec.x0.
WindowMatrix assemble_window_at(const OperatorSpec& spec, const TorusPoint& x,
                                std::int64_t a, std::int64_t b, double E);

} // namespace skewloc
