#pragma once

#include <cstdint>
#include <vector>

#include "skewloc/lattice_operator.hpp"
#include "skewloc/linalg.hpp"

namespace skewloc {

struct GreenThresholds {
    double norm_cap = 0.0;    // ||G|| must stay below this
    double rate_floor = 0.01; // far entries must beat e^{-rate_floor |m-n|}
};

// norm cap e^{N^exponent}; exponent 0.9 operationalizes the N^{1-} cap.
GreenThresholds default_thresholds(std::int64_t N, double exponent = 0.9,
                                   double rate_floor = 0.01);

struct GreenMatrix {
    CMatrix G;
    std::int64_t a = 0, b = 0;
    double E = 0.0;
    double residual = 0.0; // ||(H-E)G - I||_max (sampled columns for large N)
};

// Inverse of the window by pivoted elimination. Throws SingularWindowError on
// pivot collapse and NumericError if the residual exceeds 1e-8 * cond proxy.
GreenMatrix green_function(const WindowMatrix& w);

struct GreenReport {
    std::int64_t a = 0, b = 0;
    double E = 0.0;
    double op_norm = 0.0;
    double decay_rate = 0.0; // fitted on distances [N/8, 3N/8]; +inf sentinel when empty
    double max_far_entry = 0.0;
    bool good = false;
    GreenThresholds thresholds;
};

// Norm / far-entry decay verdict per the (b11)-(b12) style conditions:
// good = op_norm < norm_cap and |G(m,n)| < e^{-rate_floor |m-n|} whenever
// |m-n| > N/10.
GreenReport decay_report(const CMatrix& G, std::int64_t a, std::int64_t b, double E,
                         const GreenThresholds& thr);

// Good/bad verdict of the centered window [n0-M/2, n0+M/2] at scale-M
// thresholds; singular windows are bad.
bool classify_site(const OperatorSpec& spec, const TorusPoint& x, std::int64_t n0, int M,
                   double E, double rate_floor = 0.01, double norm_exponent = 0.9);

struct BadSetEstimate {
    int N = 0;
    double E = 0.0;
    int samples = 0;
    double bad_fraction = 0.0;
    double ci95 = 0.0; // binomial 95% half-width
};

// Monte-Carlo bad fraction of decay_report over uniform x on the torus.
BadSetEstimate bad_set_measure(const OperatorSpec& spec, double E, int N, int samples,
                               std::uint64_t seed, int threads = 1);

struct PasteResult {
    bool hypotheses_hold = false;
    bool conclusion_holds = false;
};

// Covers [0,N] by size-M windows stepping M/2, checks the subwindow norm and
// c0-decay hypotheses, then the (c0 - slack)-decay conclusion on the full
// window.
PasteResult paste_check(const OperatorSpec& spec, const TorusPoint& x, double E,
                        int N, int M, double c0, double slack);

// Full Hermitian eigensystem of a window assembled at E = 0; residual
// contract ||H xi - lambda xi|| < 1e-8 ||H|| per pair.
EigenSystem eigensystem(const WindowMatrix& w, bool with_vectors = true);

struct LocalizationRecord {
    double eigenvalue = 0.0;
    std::int64_t center = 0;       // argmax site of |xi|
    double decay_rate = 0.0;       // +inf sentinel for delta-like vectors
    double participation_ratio = 0.0;
};

// Eigensystem on [-N/2, N/2] at the spec base point; per-vector decay fits
// over |n - n0| in [N/8, 3N/8] (entries below 1e-300 excluded).
std::vector<LocalizationRecord> localization_table(const OperatorSpec& spec, int N);

struct ResonanceResult {
    double min_dist = 0.0;
    int attaining_j = 0;
};

// dist(E, spec H_{[-j,j]}(x0)) for j = 1..N1.
std::vector<double> resonance_distances(const OperatorSpec& spec, double E, int N1);
ResonanceResult resonance_distance(const OperatorSpec& spec, double E, int N1);

// Midpoints of `points` equal bins across the observed spectrum of the
// size-(window+1) base window.
std::vector<double> energy_grid(const OperatorSpec& spec, int window, int points);

// max_(m,n) |G_I - (G_1 ⊕ G_2 - (G_1 ⊕ G_2) Γ G_I)|(m,n) for the split of
// [a,b] after `cut`; Γ is the coupling block across the cut.
double resolvent_identity_residual(const OperatorSpec& spec, const TorusPoint& x, double E,
                                   std::int64_t a, std::int64_t b, std::int64_t cut);

// max entrywise |G_{[n,n+N]}(E,x) - G_{[0,N]}(E,T^n x)|.
double translation_covariance_residual(const OperatorSpec& spec, const TorusPoint& x,
                                       double E, std::int64_t n, int N);

} // namespace skewloc
