// AVX2 variants of the scan kernels. Compiled with -mavx2 only; runtime
// dispatch decides whether this table is used. Pure add/sub/compare kernels
// match the scalar reference bitwise; sin/cos-bearing kernels use a
// polynomial evaluated to ~1 ulp on the reduced octant.

#include <cmath>
#include <immintrin.h>

#include "skewloc/kernels/kernels.hpp"

namespace skewloc::kernels {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline __m256d abs_pd(__m256d x) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(x, mask);
}

// sin/cos of 2*pi*t for 4 lanes. Octant reduction: u = t - round(t),
// q = round(4u), theta = 2*pi*(u - q/4) in [-pi/4, pi/4].
inline void sincospi2_vec(__m256d t, __m256d& s_out, __m256d& c_out) {
    const __m256d u = _mm256_sub_pd(t, _mm256_round_pd(t, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(u, _mm256_set1_pd(4.0)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d r = _mm256_sub_pd(u, _mm256_mul_pd(q, _mm256_set1_pd(0.25)));
    const __m256d th = _mm256_mul_pd(r, _mm256_set1_pd(kTwoPi));
    const __m256d th2 = _mm256_mul_pd(th, th);

    // Taylor on |theta| <= pi/4; truncation below 5e-17.
    __m256d sp = _mm256_set1_pd(-7.6471637318198164759011319857881e-13); // -1/15!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(1.6059043836821614599392377170154e-10)); // 1/13!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(-2.5052108385441718775052108385442e-8)); // -1/11!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(2.7557319223985890652557319223986e-6)); // 1/9!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(-1.9841269841269841269841269841270e-4)); // -1/7!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(8.3333333333333333333333333333333e-3)); // 1/5!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(-1.6666666666666666666666666666667e-1)); // -1/3!
    sp = _mm256_add_pd(_mm256_mul_pd(sp, th2), _mm256_set1_pd(1.0));
    sp = _mm256_mul_pd(sp, th);

    __m256d cp = _mm256_set1_pd(4.7794773323873852974382074911175e-14); // 1/16!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(-1.1470745597729724713851697978682e-11)); // -1/14!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(2.0876756987868098979210090321201e-9)); // 1/12!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(-2.7557319223985890652557319223986e-7)); // -1/10!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(2.4801587301587301587301587301587e-5)); // 1/8!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(-1.3888888888888888888888888888889e-3)); // -1/6!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(4.1666666666666666666666666666667e-2)); // 1/4!
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(-5.0e-1));
    cp = _mm256_add_pd(_mm256_mul_pd(cp, th2), _mm256_set1_pd(1.0));

    // Quadrant index mod 4: q in {-2..2} -> qm in {0..3}.
    const __m256d qneg = _mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LT_OQ);
    const __m256d qm = _mm256_add_pd(q, _mm256_and_pd(qneg, _mm256_set1_pd(4.0)));
    const __m256d is1 = _mm256_cmp_pd(qm, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
    const __m256d is2 = _mm256_cmp_pd(qm, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
    const __m256d is3 = _mm256_cmp_pd(qm, _mm256_set1_pd(3.0), _CMP_EQ_OQ);
    const __m256d swap = _mm256_or_pd(is1, is3);

    __m256d s = _mm256_blendv_pd(sp, cp, swap);
    __m256d c = _mm256_blendv_pd(cp, sp, swap);
    const __m256d neg = _mm256_set1_pd(-0.0);
    s = _mm256_xor_pd(s, _mm256_and_pd(_mm256_or_pd(is2, is3), neg));
    c = _mm256_xor_pd(c, _mm256_and_pd(_mm256_or_pd(is1, is2), neg));
    s_out = s;
    c_out = c;
}

void sincospi2_avx2(const double* t, std::size_t n, double* s, double* c) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vs, vc;
        sincospi2_vec(_mm256_loadu_pd(t + i), vs, vc);
        _mm256_storeu_pd(s + i, vs);
        _mm256_storeu_pd(c + i, vc);
    }
    for (; i < n; ++i) {
        double u = t[i] - std::nearbyint(t[i]);
        double th = kTwoPi * u;
        s[i] = std::sin(th);
        c[i] = std::cos(th);
    }
}

void hit_count_multi_avx2(const double* const* coords, int d, std::size_t n,
                          const double* a, const double* eps, std::size_t n_eps,
                          std::uint64_t* counts) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dist = _mm256_setzero_pd();
        for (int c = 0; c < d; ++c) {
            __m256d diff = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(coords[c] + i), _mm256_set1_pd(a[c])));
            __m256d wrap = _mm256_sub_pd(one, diff);
            dist = _mm256_add_pd(dist, _mm256_min_pd(diff, wrap));
        }
        for (std::size_t e = 0; e < n_eps; ++e) {
            int mask = _mm256_movemask_pd(_mm256_cmp_pd(dist, _mm256_set1_pd(eps[e]), _CMP_LT_OQ));
            counts[e] += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(mask)));
        }
    }
    for (; i < n; ++i) {
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

void phase_dot_avx2(const double* const* coords, int d, std::size_t n,
                    const int* k, double* phases) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (int c = 0; c < d; ++c) {
            __m256d prod = _mm256_mul_pd(_mm256_set1_pd(static_cast<double>(k[c])),
                                         _mm256_loadu_pd(coords[c] + i));
            acc = _mm256_add_pd(acc, prod);
        }
        __m256d r = _mm256_sub_pd(acc, _mm256_floor_pd(acc));
        r = _mm256_blendv_pd(r, _mm256_setzero_pd(), _mm256_cmp_pd(r, one, _CMP_GE_OQ));
        _mm256_storeu_pd(phases + i, r);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) acc += static_cast<double>(k[c]) * coords[c][i];
        double r = acc - std::floor(acc);
        if (r >= 1.0) r = 0.0;
        phases[i] = r;
    }
}

void cmul_axpy_kahan_avx2(double ar, double ai, const double* tr, const double* ti,
                          std::size_t n, double* acc_r, double* acc_i,
                          double* comp_r, double* comp_i) {
    const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xr = _mm256_loadu_pd(tr + i), xi = _mm256_loadu_pd(ti + i);
        const __m256d vr = _mm256_sub_pd(_mm256_mul_pd(var, xr), _mm256_mul_pd(vai, xi));
        const __m256d vi = _mm256_add_pd(_mm256_mul_pd(var, xi), _mm256_mul_pd(vai, xr));

        __m256d acc = _mm256_loadu_pd(acc_r + i), comp = _mm256_loadu_pd(comp_r + i);
        __m256d y = _mm256_sub_pd(vr, comp);
        __m256d t = _mm256_add_pd(acc, y);
        _mm256_storeu_pd(comp_r + i, _mm256_sub_pd(_mm256_sub_pd(t, acc), y));
        _mm256_storeu_pd(acc_r + i, t);

        acc = _mm256_loadu_pd(acc_i + i);
        comp = _mm256_loadu_pd(comp_i + i);
        y = _mm256_sub_pd(vi, comp);
        t = _mm256_add_pd(acc, y);
        _mm256_storeu_pd(comp_i + i, _mm256_sub_pd(_mm256_sub_pd(t, acc), y));
        _mm256_storeu_pd(acc_i + i, t);
    }
    for (; i < n; ++i) {
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

void trig_accumulate_avx2(double cr, double ci, const double* phases, std::size_t n,
                          double* acc_r, double* acc_i) {
    const __m256d vcr = _mm256_set1_pd(cr), vci = _mm256_set1_pd(ci);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s, c;
        sincospi2_vec(_mm256_loadu_pd(phases + i), s, c);
        __m256d ar = _mm256_loadu_pd(acc_r + i);
        __m256d ai2 = _mm256_loadu_pd(acc_i + i);
        ar = _mm256_add_pd(ar, _mm256_sub_pd(_mm256_mul_pd(vcr, c), _mm256_mul_pd(vci, s)));
        ai2 = _mm256_add_pd(ai2, _mm256_add_pd(_mm256_mul_pd(vcr, s), _mm256_mul_pd(vci, c)));
        _mm256_storeu_pd(acc_r + i, ar);
        _mm256_storeu_pd(acc_i + i, ai2);
    }
    for (; i < n; ++i) {
        double u = phases[i] - std::nearbyint(phases[i]);
        double th = kTwoPi * u;
        double s = std::sin(th), c = std::cos(th);
        acc_r[i] += cr * c - ci * s;
        acc_i[i] += cr * s + ci * c;
    }
}

void sum_sincos_kahan_avx2(const double* phases, std::size_t n,
                           double* sum_c, double* sum_s, double* comp_c, double* comp_s) {
    __m256d accc = _mm256_setzero_pd(), accs = _mm256_setzero_pd();
    __m256d cmpc = _mm256_setzero_pd(), cmps = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s, c;
        sincospi2_vec(_mm256_loadu_pd(phases + i), s, c);
        __m256d y = _mm256_sub_pd(c, cmpc);
        __m256d t = _mm256_add_pd(accc, y);
        cmpc = _mm256_sub_pd(_mm256_sub_pd(t, accc), y);
        accc = t;
        y = _mm256_sub_pd(s, cmps);
        t = _mm256_add_pd(accs, y);
        cmps = _mm256_sub_pd(_mm256_sub_pd(t, accs), y);
        accs = t;
    }
    // Merge the four lanes in fixed order, then the scalar tail.
    alignas(32) double lc[4], ls[4];
    _mm256_store_pd(lc, accc);
    _mm256_store_pd(ls, accs);
    double sc = *sum_c, ss = *sum_s, cc = *comp_c, cs = *comp_s;
    for (int lane = 0; lane < 4; ++lane) {
        double y = lc[lane] - cc;
        double t = sc + y;
        cc = (t - sc) - y;
        sc = t;
        y = ls[lane] - cs;
        t = ss + y;
        cs = (t - ss) - y;
        ss = t;
    }
    for (; i < n; ++i) {
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

const Ops* avx2_ops() {
    static const Ops table = {
        sincospi2_avx2,
        hit_count_multi_avx2,
        phase_dot_avx2,
        cmul_axpy_kahan_avx2,
        trig_accumulate_avx2,
        sum_sincos_kahan_avx2,
    };
    return &table;
}

} // namespace skewloc::kernels
