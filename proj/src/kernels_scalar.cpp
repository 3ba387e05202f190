#include <cmath>

#include "skewloc/kernels/kernels.hpp"

namespace skewloc::kernels {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void sincospi2_scalar(const double* t, std::size_t n, double* s, double* c) {
    for (std::size_t i = 0; i < n; ++i) {
        // Reduce to [-1/2, 1/2] first; sin/cos of 2*pi*t are 1-periodic.
        double u = t[i] - std::nearbyint(t[i]);
        double th = kTwoPi * u;
        s[i] = std::sin(th);
        c[i] = std::cos(th);
    }
}

void hit_count_multi_scalar(const double* const* coords, int d, std::size_t n,
                            const double* a, const double* eps, std::size_t n_eps,
                            std::uint64_t* counts) {
    for (std::size_t i = 0; i < n; ++i) {
        double dist = 0.0;
        for (int c = 0; c < d; ++c) {
            double diff = std::fabs(coords[c][i] - a[c]);
            double wrap = 1.0 - diff;
            dist += diff < wrap ? diff : wrap;
        }
        for (std::size_t e = 0; e < n_eps; ++e)
            counts[e] += dist < eps[e] ? 1u : 0u;
    }
}

void phase_dot_scalar(const double* const* coords, int d, std::size_t n,
                      const int* k, double* phases) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) acc += static_cast<double>(k[c]) * coords[c][i];
        double r = acc - std::floor(acc);
        if (r >= 1.0) r = 0.0;
        phases[i] = r;
    }
}

void cmul_axpy_kahan_scalar(double ar, double ai, const double* tr, const double* ti,
                            std::size_t n, double* acc_r, double* acc_i,
                            double* comp_r, double* comp_i) {
    for (std::size_t i = 0; i < n; ++i) {
        const double vr = ar * tr[i] - ai * ti[i];
        const double vi = ar * ti[i] + ai * tr[i];
        double y = vr - comp_r[i];
        double t = acc_r[i] + y;
        comp_r[i] = (t - acc_r[i]) - y;
        acc_r[i] = t;
        y = vi - comp_i[i];
        t = acc_i[i] + y;
        comp_i[i] = (t - acc_i[i]) - y;
        acc_i[i] = t;
    }
}

void trig_accumulate_scalar(double cr, double ci, const double* phases, std::size_t n,
                            double* acc_r, double* acc_i) {
    for (std::size_t i = 0; i < n; ++i) {
        double u = phases[i] - std::nearbyint(phases[i]);
        double th = kTwoPi * u;
        double s = std::sin(th), c = std::cos(th);
        acc_r[i] += cr * c - ci * s;
        acc_i[i] += cr * s + ci * c;
    }
}

void sum_sincos_kahan_scalar(const double* phases, std::size_t n,
                             double* sum_c, double* sum_s, double* comp_c, double* comp_s) {
    double sc = *sum_c, ss = *sum_s, cc = *comp_c, cs = *comp_s;
    for (std::size_t i = 0; i < n; ++i) {
        double u = phases[i] - std::nearbyint(phases[i]);
        double th = kTwoPi * u;
        double s = std::sin(th), c = std::cos(th);
        double y = c - cc;
        double t = sc + y;
        cc = (t - sc) - y;
        sc = t;
        y = s - cs;
        t = ss + y;
        cs = (t - ss) - y;
        ss = t;
    }
    *sum_c = sc;
    *sum_s = ss;
    *comp_c = cc;
    *comp_s = cs;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table = {
        sincospi2_scalar,
        hit_count_multi_scalar,
        phase_dot_scalar,
        cmul_axpy_kahan_scalar,
        trig_accumulate_scalar,
        sum_sincos_kahan_scalar,
    };
    return table;
}

} // namespace skewloc::kernels
