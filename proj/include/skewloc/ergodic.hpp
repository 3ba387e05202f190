#pragma once

#include <cstdint>
#include <vector>

#include "skewloc/frequency.hpp"
#include "skewloc/torus.hpp"

namespace skewloc {

struct HitStats {
    std::int64_t L = 0;
    double epsilon = 0.0;
    std::int64_t count = 0;
    double bound_ratio = 0.0; // count / (eps^d * L)
};

struct WeylRecord {
    std::vector<int> k;
    std::int64_t L = 0;
    double value = 0.0; // S_k
    int case_j = 0;     // d - position of the leading nonzero component
    double predicted_bound = 0.0;
};

// Constants of the predicted bounds; the "+" loss in the exponent is theta.
struct WeylConfig {
    double C = 10.0;
    double theta = 0.05;
};

enum class KNorm { Linf, L1 };

struct AggregateResult {
    double sum = 0.0;
    double ratio_to_L = 0.0;
};

// Fejer kernel F_R(t) = sum_{|l|<R} (1-|l|/R) e^{2 pi i l t}, via the closed
// form (1/R)(sin(pi R t)/sin(pi t))^2 with a series fallback near integers.
double fejer_kernel(int R, double t);
// Direct coefficient sum; the independent route for cross-checks.
double fejer_kernel_series(int R, double t);

// Samples points of the open l1-ball ||x|| < eps and verifies the pointwise
// majorant 1 <= C * eps^d * prod_j F_R(x_j) with R = max(1, floor(1/(2 eps)))
// (the main-lobe-valid kernel order). C <= 0 selects the default 4^d.
bool fejer_majorant_check(double epsilon, int samples, int d, double C = 0.0,
                          std::uint64_t seed = 12345);

// #{ n in [1,L] : ||T^n x - a|| < eps } along the canonical orbit scan.
HitStats hit_count(const TorusPoint& x, const TorusPoint& a, double eps,
                   std::int64_t L, const Frequency& omega, int threads = 1);
// One orbit pass shared across several radii.
std::vector<HitStats> hit_count_multi(const TorusPoint& x, const TorusPoint& a,
                                      const std::vector<double>& eps_list,
                                      std::int64_t L, const Frequency& omega, int threads = 1);

int weyl_case_index(const std::vector<int>& k, int d);
double weyl_bound(const std::vector<int>& k, std::int64_t L, int d, const WeylConfig& cfg = {});

// S_k = |sum_{n=1}^{L} e^{2 pi i <T^n x, k>}| with compensated accumulation.
WeylRecord weyl_sum(const TorusPoint& x, const std::vector<int>& k, std::int64_t L,
                    const Frequency& omega, const WeylConfig& cfg = {}, int threads = 1);

// All S_k for 0 < |k|_inf <= k_box in one orbit pass.
std::vector<WeylRecord> weyl_table(const TorusPoint& x, int k_box, std::int64_t L,
                                   const Frequency& omega, const WeylConfig& cfg = {},
                                   int threads = 1);

// sum of S_k over 0 < |k| <= floor(1/eps)-1 in the chosen norm.
// enforce_regime turns on the lemma-regime precondition
// eps > L^(-1/((d+1) 2^(d+1))) as an invalid-argument check.
AggregateResult weyl_aggregate(const TorusPoint& x, double eps, std::int64_t L,
                               const Frequency& omega, KNorm norm = KNorm::Linf,
                               bool enforce_regime = false, int threads = 1);

} // namespace skewloc
