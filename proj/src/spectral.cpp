#include "skewloc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewloc/errors.hpp"
#include "skewloc/parallel.hpp"
#include "skewloc/rng.hpp"

namespace skewloc {

namespace {

CMatrix window_to_matrix(const WindowMatrix& w) {
    CMatrix m(w.size);
    m.a = w.entries;
    return m;
}

// least-squares slope of log(max|G| at distance s) over s in [N/8, 3N/8]
double fit_decay_rate(const CMatrix& G, std::int64_t N) {
    const std::int64_t lo = (N + 7) / 8;           // ceil(N/8)
    const std::int64_t hi = (3 * N) / 8;           // floor(3N/8)
    std::vector<double> xs, ys;
    for (std::int64_t s = std::max<std::int64_t>(lo, 1); s <= hi; ++s) {
        double mx = 0.0;
        for (int m = 0; m + s <= N; ++m)
            mx = std::max(mx, std::max(std::abs(G.at(m, static_cast<int>(m + s))),
                                       std::abs(G.at(static_cast<int>(m + s), m))));
        if (mx < 1e-300) continue;
        xs.push_back(static_cast<double>(s));
        ys.push_back(std::log(mx));
    }
    if (xs.size() < 2) return std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    const double slope = (n * sxy - sx * sy) / denom;
    return -slope;
}

} // namespace

GreenThresholds default_thresholds(std::int64_t N, double exponent, double rate_floor) {
    GreenThresholds thr;
    thr.norm_cap = std::exp(std::pow(static_cast<double>(std::max<std::int64_t>(N, 1)), exponent));
    thr.rate_floor = rate_floor;
    return thr;
}

GreenMatrix green_function(const WindowMatrix& w) {
    if (w.size > kMaxWindow + 1)
        throw ResourceLimitError("green_function: window exceeds the desk-scale guard");
    const CMatrix h = window_to_matrix(w);
    GreenMatrix out;
    out.a = w.a;
    out.b = w.b;
    out.E = w.E;
    out.G = lu_invert(h);
    out.residual = inverse_residual(h, out.G);
    const double cond_proxy = std::max(1.0, h.norm_inf() * out.G.norm_inf());
    if (!(out.residual < 1e-8 * cond_proxy))
        throw NumericError("green_function: inversion residual exceeds 1e-8 * cond proxy");
    return out;
}

GreenReport decay_report(const CMatrix& G, std::int64_t a, std::int64_t b, double E,
                         const GreenThresholds& thr) {
    const std::int64_t N = b - a;
    if (G.n != static_cast<int>(N + 1))
        throw std::invalid_argument("decay_report: matrix size does not match the interval");
    if (G.n < 10) throw std::invalid_argument("decay_report: window size >= 10 required");

    GreenReport rep;
    rep.a = a;
    rep.b = b;
    rep.E = E;
    rep.thresholds = thr;
    rep.op_norm = op_norm_2(G);

    bool decay_ok = true;
    double max_far = 0.0;
    const double far_cut = static_cast<double>(N) / 10.0;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            const double s = std::fabs(static_cast<double>(m - n));
            if (!(s > far_cut)) continue;
            const double mag = std::abs(G.at(m, n));
            max_far = std::max(max_far, mag);
            if (!(mag < std::exp(-thr.rate_floor * s))) decay_ok = false;
        }
    }
    rep.max_far_entry = max_far;
    rep.decay_rate = fit_decay_rate(G, N);
    rep.good = (rep.op_norm < thr.norm_cap) && decay_ok;
    return rep;
}

bool classify_site(const OperatorSpec& spec, const TorusPoint& x, std::int64_t n0, int M,
                   double E, double rate_floor, double norm_exponent) {
    if (M < 10 || M % 2 != 0)
        throw std::invalid_argument("classify_site: M must be even and >= 10");
    const std::int64_t a = n0 - M / 2;
    const std::int64_t b = n0 + M / 2;
    try {
        const WindowMatrix w = assemble_window_at(spec, x, a, b, E);
        const GreenMatrix g = green_function(w);
        return decay_report(g.G, a, b, E, default_thresholds(M, norm_exponent, rate_floor)).good;
    } catch (const SingularWindowError&) {
        return false;
    }
}

BadSetEstimate bad_set_measure(const OperatorSpec& spec, double E, int N, int samples,
                               std::uint64_t seed, int threads) {
    if (samples < 100)
        throw std::invalid_argument("bad_set_measure: samples >= 100 required");
    std::vector<std::uint8_t> bad(static_cast<std::size_t>(samples), 0);
    parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
        Rng rng(seed, 0xbad5e7 + i);
        std::vector<double> coords(static_cast<std::size_t>(spec.d));
        for (auto& c : coords) c = rng.u01();
        const TorusPoint x = TorusPoint::from_doubles(coords);
        bool is_bad;
        try {
            const WindowMatrix w = assemble_window_at(spec, x, 0, N, E);
            const GreenMatrix g = green_function(w);
            is_bad = !decay_report(g.G, 0, N, E, default_thresholds(N)).good;
        } catch (const SingularWindowError&) {
            is_bad = true;
        }
        bad[i] = is_bad ? 1 : 0;
    });
    int count = 0;
    for (auto b : bad) count += b;
    BadSetEstimate est;
    est.N = N;
    est.E = E;
    est.samples = samples;
    est.bad_fraction = static_cast<double>(count) / samples;
    est.ci95 = 1.96 * std::sqrt(est.bad_fraction * (1.0 - est.bad_fraction) /
                                static_cast<double>(samples));
    return est;
}

PasteResult paste_check(const OperatorSpec& spec, const TorusPoint& x, double E,
                        int N, int M, double c0, double slack) {
    if (M > N / 4) throw std::invalid_argument("paste_check: M <= N/4 required");
    if (M < 4 || M % 2 != 0) throw std::invalid_argument("paste_check: M must be even and >= 4");

    // size-M windows stepping M/2 so every [k-M/4, k+M/4] lands inside one
    std::vector<int> starts;
    for (int s = 0; s + M <= N; s += M / 2) starts.push_back(s);
    if (starts.empty() || starts.back() != N - M) starts.push_back(N - M);

    PasteResult res;
    res.hypotheses_hold = true;
    const double norm_cap = std::exp(std::pow(static_cast<double>(M), 0.9));
    for (int s : starts) {
        try {
            const WindowMatrix w = assemble_window_at(spec, x, s, s + M, E);
            const GreenMatrix g = green_function(w);
            if (!(op_norm_2(g.G) < norm_cap)) {
                res.hypotheses_hold = false;
                break;
            }
            bool ok = true;
            for (int m = 0; m <= M && ok; ++m) {
                for (int n = 0; n <= M; ++n) {
                    const double dist = std::fabs(static_cast<double>(m - n));
                    if (!(dist > static_cast<double>(M) / 10.0)) continue;
                    if (!(std::abs(g.G.at(m, n)) < std::exp(-c0 * dist))) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) {
                res.hypotheses_hold = false;
                break;
            }
        } catch (const SingularWindowError&) {
            res.hypotheses_hold = false;
            break;
        }
    }

    try {
        const WindowMatrix w = assemble_window_at(spec, x, 0, N, E);
        const GreenMatrix g = green_function(w);
        bool ok = true;
        const double rate = c0 - slack;
        for (int m = 0; m <= N && ok; ++m) {
            for (int n = 0; n <= N; ++n) {
                const double dist = std::fabs(static_cast<double>(m - n));
                if (!(dist > static_cast<double>(N) / 10.0)) continue;
                if (!(std::abs(g.G.at(m, n)) < std::exp(-rate * dist))) {
                    ok = false;
                    break;
                }
            }
        }
        res.conclusion_holds = ok;
    } catch (const SingularWindowError&) {
        res.conclusion_holds = false;
    }
    return res;
}

EigenSystem eigensystem(const WindowMatrix& w, bool with_vectors) {
    if (w.size > 2048) throw ResourceLimitError("eigensystem: window size > 2048");
    if (w.E != 0.0) throw std::invalid_argument("eigensystem: expects a window assembled at E = 0");
    const CMatrix h = window_to_matrix(w);
    EigenSystem sys = hermitian_eigen(h, with_vectors);
    if (with_vectors) {
        // residual contract ||H xi - lambda xi||_2 < 1e-8 ||H||
        const double scale = std::max({std::fabs(sys.values.front()), std::fabs(sys.values.back()), 1e-300});
        for (int j = 0; j < h.n; ++j) {
            double r2 = 0.0;
            for (int i = 0; i < h.n; ++i) {
                std::complex<double> s{0.0, 0.0};
                for (int k = 0; k < h.n; ++k) s += h.at(i, k) * sys.vectors.at(k, j);
                s -= sys.values[static_cast<std::size_t>(j)] * sys.vectors.at(i, j);
                r2 += std::norm(s);
            }
            if (!(std::sqrt(r2) < 1e-8 * scale))
                throw NumericError("eigensystem: residual contract violated");
        }
    }
    return sys;
}

std::vector<LocalizationRecord> localization_table(const OperatorSpec& spec, int N) {
    if (N > 2048) throw ResourceLimitError("localization_table: N > 2048");
    if (N < 8) throw std::invalid_argument("localization_table: N too small");
    const std::int64_t a = -static_cast<std::int64_t>(N) / 2;
    const std::int64_t b = a + N;
    const WindowMatrix w = assemble_window(spec, a, b, 0.0);
    const EigenSystem sys = eigensystem(w, true);
    const int n = w.size;

    std::vector<LocalizationRecord> out;
    out.reserve(static_cast<std::size_t>(n));
    const std::int64_t fit_lo = std::max<std::int64_t>((N + 7) / 8, 1);
    const std::int64_t fit_hi = (3 * static_cast<std::int64_t>(N)) / 8;
    for (int j = 0; j < n; ++j) {
        LocalizationRecord rec;
        rec.eigenvalue = sys.values[static_cast<std::size_t>(j)];
        // normalize and locate the center
        double norm2 = 0.0;
        int center = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(sys.vectors.at(i, j));
            norm2 += mag * mag;
            if (mag > best) {
                best = mag;
                center = i;
            }
        }
        const double inv_norm = 1.0 / std::sqrt(norm2);
        rec.center = a + center;

        double p4 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(sys.vectors.at(i, j)) * inv_norm;
            p4 += mag * mag * mag * mag;
        }
        rec.participation_ratio = 1.0 / p4;

        std::vector<double> xs, ys;
        for (int i = 0; i < n; ++i) {
            const std::int64_t dist = std::llabs(static_cast<std::int64_t>(i) - center);
            if (dist < fit_lo || dist > fit_hi) continue;
            const double mag = std::abs(sys.vectors.at(i, j)) * inv_norm;
            if (mag < 1e-300) continue;
            xs.push_back(static_cast<double>(dist));
            ys.push_back(std::log(mag));
        }
        if (xs.size() < 2) {
            rec.decay_rate = std::numeric_limits<double>::infinity();
        } else {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double cnt = static_cast<double>(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            const double denom = cnt * sxx - sx * sx;
            rec.decay_rate = denom == 0.0 ? std::numeric_limits<double>::infinity()
                                          : -(cnt * sxy - sx * sy) / denom;
        }
        out.push_back(rec);
    }
    return out;
}

std::vector<double> resonance_distances(const OperatorSpec& spec, double E, int N1) {
    if (N1 < 1 || N1 > 512) throw std::invalid_argument("resonance_distances: need 1 <= N1 <= 512");
    std::vector<double> out(static_cast<std::size_t>(N1));
    for (int j = 1; j <= N1; ++j) {
        const WindowMatrix w = assemble_window(spec, -j, j, 0.0);
        const EigenSystem sys = eigensystem(w, false);
        double best = std::numeric_limits<double>::infinity();
        for (double lam : sys.values) best = std::min(best, std::fabs(lam - E));
        out[static_cast<std::size_t>(j - 1)] = best;
    }
    return out;
}

ResonanceResult resonance_distance(const OperatorSpec& spec, double E, int N1) {
    const std::vector<double> d = resonance_distances(spec, E, N1);
    ResonanceResult res;
    res.min_dist = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= N1; ++j) {
        if (d[static_cast<std::size_t>(j - 1)] < res.min_dist) {
            res.min_dist = d[static_cast<std::size_t>(j - 1)];
            res.attaining_j = j;
        }
    }
    return res;
}

std::vector<double> energy_grid(const OperatorSpec& spec, int window, int points) {
    const WindowMatrix w = assemble_window(spec, 0, window, 0.0);
    const EigenSystem sys = eigensystem(w, false);
    const double lo = sys.values.front();
    const double hi = sys.values.back();
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
    return grid;
}

double resolvent_identity_residual(const OperatorSpec& spec, const TorusPoint& x, double E,
                                   std::int64_t a, std::int64_t b, std::int64_t cut) {
    if (cut < a || cut >= b) throw std::invalid_argument("resolvent_identity_residual: bad cut");
    const WindowMatrix wI = assemble_window_at(spec, x, a, b, E);
    const WindowMatrix w1 = assemble_window_at(spec, x, a, cut, E);
    const WindowMatrix w2 = assemble_window_at(spec, x, cut + 1, b, E);
    const CMatrix GI = lu_invert(window_to_matrix(wI));
    const CMatrix G1 = lu_invert(window_to_matrix(w1));
    const CMatrix G2 = lu_invert(window_to_matrix(w2));

    const int W = wI.size;
    const int W1 = w1.size;
    // D(m,n) = (G1 ⊕ G2)(m,n); Gamma = coupling entries of H across the cut.
    auto D_at = [&](int m, int n) -> std::complex<double> {
        if (m < W1 && n < W1) return G1.at(m, n);
        if (m >= W1 && n >= W1) return G2.at(m - W1, n - W1);
        return {0.0, 0.0};
    };
    double worst = 0.0;
    for (int m = 0; m < W; ++m) {
        for (int n = 0; n < W; ++n) {
            // rhs = D(m,n) - sum_{k,k' across the cut} D(m,k) H(k,k') GI(k',n)
            std::complex<double> rhs = D_at(m, n);
            for (int k = 0; k < W; ++k) {
                const std::complex<double> dmk = D_at(m, k);
                if (dmk == std::complex<double>(0.0, 0.0)) continue;
                // couplings only across the cut, within the hopping band
                const bool k_left = k < W1;
                const int lo = k_left ? W1 : 0;
                const int hi = k_left ? W - 1 : W1 - 1;
                for (int kp = lo; kp <= hi; ++kp) {
                    const std::complex<double> h = wI.at(k, kp);
                    if (h == std::complex<double>(0.0, 0.0)) continue;
                    rhs -= dmk * h * GI.at(kp, n);
                }
            }
            worst = std::max(worst, std::abs(GI.at(m, n) - rhs));
        }
    }
    return worst;
}

double translation_covariance_residual(const OperatorSpec& spec, const TorusPoint& x,
                                       double E, std::int64_t n, int N) {
    const WindowMatrix shifted = assemble_window_at(spec, x, n, n + N, E);
    const TorusPoint tx = orbit_point_any(x, n, spec.omega);
    const WindowMatrix based = assemble_window_at(spec, tx, 0, N, E);
    const CMatrix Gs = lu_invert(window_to_matrix(shifted));
    const CMatrix Gb = lu_invert(window_to_matrix(based));
    double worst = 0.0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            worst = std::max(worst, std::abs(Gs.at(i, j) - Gb.at(i, j)));
    return worst;
}

} // namespace skewloc
