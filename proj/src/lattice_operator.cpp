#include "skewloc/lattice_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewloc/errors.hpp"
#include "skewloc/rng.hpp"

namespace skewloc {

namespace {

constexpr double kRescaleMargin = 1.0 - 0x1.0p-16; // keeps the strict norm cap

std::array<int, kMaxTrigDim> freq(std::initializer_list<int> vals) {
    std::array<int, kMaxTrigDim> l{};
    int i = 0;
    for (int v : vals) l[static_cast<std::size_t>(i++)] = v;
    return l;
}

// Lexicographic sign of the first nonzero component.
int lead_sign(const std::array<int, kMaxTrigDim>& l, int d) {
    for (int i = 0; i < d; ++i) {
        if (l[static_cast<std::size_t>(i)] > 0) return 1;
        if (l[static_cast<std::size_t>(i)] < 0) return -1;
    }
    return 0;
}

} // namespace

double grid_max_modulus(const TrigPoly& p) {
    const int d = p.dim();
    const int grid_axes = std::min(d, 3);
    const int G = 64;
    const int tail_axes = d - grid_axes;
    const int slices = tail_axes > 0 ? 16 : 1;
    Rng slice_rng(0x51ce5u, 77); // fixed stream: estimates are reproducible

    std::vector<double> coords(static_cast<std::size_t>(d), 0.0);
    double best = 0.0;
    for (int s = 0; s < slices; ++s) {
        for (int t = 0; t < tail_axes; ++t)
            coords[static_cast<std::size_t>(grid_axes + t)] = slice_rng.u01();
        std::int64_t total = 1;
        for (int ax = 0; ax < grid_axes; ++ax) total *= G;
        for (std::int64_t idx = 0; idx < total; ++idx) {
            std::int64_t rem = idx;
            for (int ax = 0; ax < grid_axes; ++ax) {
                coords[static_cast<std::size_t>(ax)] = static_cast<double>(rem % G) / G;
                rem /= G;
            }
            best = std::max(best, std::abs(p.eval(TorusPoint::from_doubles(coords))));
        }
    }
    return best;
}

PotentialRange potential_range(const TrigPoly& v) {
    PotentialRange out;
    const int d = v.dim();
    const int grid_axes = std::min(d, 3);
    const int G = 64;
    const int tail_axes = d - grid_axes;
    const int slices = tail_axes > 0 ? 16 : 1;
    Rng slice_rng(0x51ce5u, 78);

    bool first = true;
    std::vector<double> coords(static_cast<std::size_t>(d), 0.0);
    for (int s = 0; s < slices; ++s) {
        for (int t = 0; t < tail_axes; ++t)
            coords[static_cast<std::size_t>(grid_axes + t)] = slice_rng.u01();
        std::int64_t total = 1;
        for (int ax = 0; ax < grid_axes; ++ax) total *= G;
        for (std::int64_t idx = 0; idx < total; ++idx) {
            std::int64_t rem = idx;
            for (int ax = 0; ax < grid_axes; ++ax) {
                coords[static_cast<std::size_t>(ax)] = static_cast<double>(rem % G) / G;
                rem /= G;
            }
            const double val = v.eval(TorusPoint::from_doubles(coords)).real();
            if (first || val < out.grid_min) out.grid_min = val;
            if (first || val > out.grid_max) out.grid_max = val;
            first = false;
        }
    }
    // |grad| <= 2 pi sum |c_l| * |l|_1, a rigorous modulus-of-continuity bound
    double lip = 0.0;
    for (const auto& t : v.terms()) {
        double l1 = 0.0;
        for (int i = 0; i < d; ++i) l1 += std::abs(t.l[static_cast<std::size_t>(i)]);
        lip += 2.0 * 3.14159265358979323846 * std::abs(t.c) * l1;
    }
    out.lipschitz = lip;
    return out;
}

OperatorSpec sample_random_spec(const SampleParams& params) {
    if (params.d < 3) throw std::invalid_argument("sample_random_spec: d >= 3 required");
    if (params.d > kMaxTrigDim) throw std::invalid_argument("sample_random_spec: d too large");
    if (!(params.gamma > 0.0)) throw std::invalid_argument("sample_random_spec: gamma > 0 required");
    if (!(params.C1 >= 1.0)) throw std::invalid_argument("sample_random_spec: C1 >= 1 required");
    if (params.K_max < 1) throw std::invalid_argument("sample_random_spec: K_max >= 1 required");
    if (params.v_degree < 1) throw std::invalid_argument("sample_random_spec: v_degree >= 1 required");

    OperatorSpec spec;
    spec.d = params.d;
    spec.seed = params.seed;
    spec.v_degree = params.v_degree;
    spec.omega = Frequency::golden_mean();

    // v: conjugate-symmetric coefficients over the full degree box.
    {
        Rng rng(params.seed, 1);
        TrigPoly v(params.d, true);
        const int D = params.v_degree;
        std::vector<int> l(static_cast<std::size_t>(params.d), -D);
        bool done = false;
        while (!done) {
            std::array<int, kMaxTrigDim> lf{};
            for (int i = 0; i < params.d; ++i) lf[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)];
            const int sign = lead_sign(lf, params.d);
            if (sign == 0) {
                v.add_term(lf, {rng.uniform(-0.5, 0.5), 0.0});
            } else if (sign > 0) {
                const std::complex<double> c{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
                v.add_term(lf, c);
                std::array<int, kMaxTrigDim> neg{};
                for (int i = 0; i < params.d; ++i) neg[static_cast<std::size_t>(i)] = -lf[static_cast<std::size_t>(i)];
                v.add_term(neg, std::conj(c));
            }
            int pos = params.d - 1;
            while (pos >= 0) {
                if (++l[static_cast<std::size_t>(pos)] <= D) break;
                l[static_cast<std::size_t>(pos)] = -D;
                --pos;
            }
            done = pos < 0;
        }
        // guarantee a visibly nonconstant potential
        double max_nonconst = 0.0;
        for (const auto& t : v.terms())
            if (lead_sign(t.l, params.d) != 0) max_nonconst = std::max(max_nonconst, std::abs(t.c));
        if (max_nonconst < 0.05) {
            const std::complex<double> c{0.3, 0.0};
            v.add_term(freq({1}), c);
            v.add_term(freq({-1}), std::conj(c));
        }
        v.freeze();
        spec.v = v;
    }

    // hopping family
    spec.hopping.gamma = params.gamma;
    spec.hopping.C1 = params.C1;
    spec.hopping.K_max = params.K_max;
    for (int k = 1; k <= params.K_max; ++k) {
        Rng rng(params.seed, 100 + static_cast<std::uint64_t>(k));
        const double cap = std::max(1.0, std::pow(static_cast<double>(k), params.C1));
        int D = static_cast<int>(std::ceil(cap)) - 1; // largest degree < cap
        D = std::min(D, 512);
        TrigPoly phi(params.d, false);
        const int want = 3;
        int added = 0;
        int guard = 0;
        while (added < want && guard++ < 64) {
            std::array<int, kMaxTrigDim> lf{};
            for (int i = 0; i < params.d; ++i)
                lf[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(-D, D));
            bool dup = false;
            for (const auto& t : phi.terms())
                if (t.l == lf) dup = true;
            if (dup) continue;
            phi.add_term(lf, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
            ++added;
        }
        phi.freeze();
        const double target = 0.5 * params.gamma * std::exp(-k) * kRescaleMargin;
        double gmax = grid_max_modulus(phi);
        if (gmax <= 0.0) {
            phi = TrigPoly(params.d, false);
            phi.add_term(freq({}), {target, 0.0});
            phi.freeze();
        } else {
            TrigPoly scaled(params.d, false);
            const double f = target / gmax;
            for (const auto& t : phi.terms()) scaled.add_term(t.l, t.c * f);
            scaled.freeze();
            phi = scaled;
        }
        spec.hopping.phis.push_back(std::move(phi));
    }

    // base point
    {
        Rng rng(params.seed, 2);
        std::vector<double> x(static_cast<std::size_t>(params.d));
        for (auto& c : x) c = rng.u01();
        spec.x0 = TorusPoint::from_doubles(x);
    }
    return spec;
}

std::vector<std::string> check_spec_invariants(const OperatorSpec& spec) {
    std::vector<std::string> bad;
    if (spec.d < 3) bad.push_back("d must be >= 3");
    if (!(spec.hopping.gamma > 0.0)) bad.push_back("gamma must be positive");
    if (!(spec.omega.value > 0.0) || !(spec.omega.value < 1.0))
        bad.push_back("omega must lie in (0,1)");
    if (!(spec.omega.dc_constant > 0.0)) bad.push_back("dc_constant must be positive");
    if (spec.v.dim() != spec.d) bad.push_back("v dimension mismatch");
    if (spec.x0.dim() != spec.d) bad.push_back("x0 dimension mismatch");
    if (!spec.v.real_valued() || !spec.v.conjugate_symmetric())
        bad.push_back("v must be real-valued (conjugate-symmetric coefficients)");
    if (!spec.v.nonconstant()) bad.push_back("v nonconstant violated");
    if (static_cast<int>(spec.hopping.phis.size()) != spec.hopping.K_max)
        bad.push_back("hopping family must store phi_k for k = 1..K_max");
    for (int k = 1; k <= static_cast<int>(spec.hopping.phis.size()); ++k) {
        const TrigPoly& phi = spec.hopping.phis[static_cast<std::size_t>(k - 1)];
        if (phi.dim() != spec.d) {
            bad.push_back("phi_" + std::to_string(k) + " dimension mismatch");
            continue;
        }
        const double cap = std::max(1.0, std::pow(static_cast<double>(k), spec.hopping.C1));
        if (!(static_cast<double>(phi.degree()) < cap))
            bad.push_back("phi_" + std::to_string(k) + " degree " + std::to_string(phi.degree()) +
                          " not below k^C1 cap");
        const double norm_cap = spec.hopping.gamma * std::exp(-k);
        const double est = sup_norm_estimate(phi);
        if (!(est < norm_cap))
            bad.push_back("phi_" + std::to_string(k) + " sup-norm estimate " + std::to_string(est) +
                          " not below gamma*e^-k = " + std::to_string(norm_cap));
    }
    return bad;
}

std::complex<double> matrix_entry(const OperatorSpec& spec, std::int64_t m, std::int64_t n) {
    if (m == n) {
        const TorusPoint p = orbit_point_any(spec.x0, m, spec.omega);
        return {spec.v.eval_real(p), 0.0};
    }
    if (m < n) return std::conj(matrix_entry(spec, n, m));
    std::complex<double> val{0.0, 0.0};
    if (const TrigPoly* up = spec.hopping.phi(m - n)) {
        const TorusPoint pm = orbit_point_any(spec.x0, m, spec.omega);
        val += up->eval(pm);
    }
    if (const TrigPoly* dn = spec.hopping.phi(n - m)) { // zero for the positive-k convention
        const TorusPoint pn = orbit_point_any(spec.x0, n, spec.omega);
        val += std::conj(dn->eval(pn));
    }
    return val;
}

WindowMatrix assemble_window_at(const OperatorSpec& spec, const TorusPoint& x,
                                std::int64_t a, std::int64_t b, double E) {
    if (b < a) throw std::invalid_argument("assemble_window: b >= a required");
    if (b - a > kMaxWindow)
        throw ResourceLimitError("assemble_window: window exceeds the desk-scale guard");
    if (x.dim() != spec.d) throw std::invalid_argument("assemble_window: base dimension mismatch");
    const TorusPoint base_pt = x.precision() == Precision::Float64 ? x : x.to_float64();

    const int W = static_cast<int>(b - a + 1);
    WindowMatrix w;
    w.a = a;
    w.b = b;
    w.E = E;
    w.size = W;
    w.base = base_pt;
    w.entries.assign(static_cast<std::size_t>(W) * W, {0.0, 0.0});

    // Orbit points of the window, each from the closed form (one rounding).
    // m may be negative: closed form needs n >= 0, so anchor at min(a, 0).
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(spec.d),
                                         std::vector<double>(static_cast<std::size_t>(W)));
    std::vector<double*> ptrs(static_cast<std::size_t>(spec.d));
    for (int c = 0; c < spec.d; ++c) ptrs[static_cast<std::size_t>(c)] = pts[static_cast<std::size_t>(c)].data();
    for (int i = 0; i < W; ++i) {
        const TorusPoint p = orbit_point_any(base_pt, a + i, spec.omega);
        for (int c = 0; c < spec.d; ++c)
            ptrs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] =
                p.f64()[static_cast<std::size_t>(c)];
    }

    // diagonal
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(W));
    spec.v.eval_batch(ptrs.data(), static_cast<std::size_t>(W), vals.data());
    for (int i = 0; i < W; ++i) w.at(i, i) = {vals[static_cast<std::size_t>(i)].real() - E, 0.0};

    // lower triangle from phi_k at the row point; upper by conjugation
    const int kmax = std::min<std::int64_t>(spec.hopping.K_max, W - 1);
    for (int k = 1; k <= kmax; ++k) {
        const TrigPoly* phi = spec.hopping.phi(k);
        if (!phi || phi->empty()) continue;
        const std::size_t cnt = static_cast<std::size_t>(W - k);
        std::vector<const double*> rowpts(static_cast<std::size_t>(spec.d));
        for (int c = 0; c < spec.d; ++c)
            rowpts[static_cast<std::size_t>(c)] = ptrs[static_cast<std::size_t>(c)] + k;
        std::vector<std::complex<double>> hv(cnt);
        phi->eval_batch(const_cast<double* const*>(rowpts.data()), cnt, hv.data());
        for (int i = 0; i < W - k; ++i) {
            w.at(i + k, i) = hv[static_cast<std::size_t>(i)];
            w.at(i, i + k) = std::conj(hv[static_cast<std::size_t>(i)]);
        }
    }
    return w;
}

WindowMatrix assemble_window(const OperatorSpec& spec, std::int64_t a, std::int64_t b, double E) {
    return assemble_window_at(spec, spec.x0, a, b, E);
}

} // namespace skewloc
