#include "skewloc/ergodic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "skewloc/errors.hpp"
#include "skewloc/kernels/kernels.hpp"
#include "skewloc/orbit_stream.hpp"
#include "skewloc/parallel.hpp"
#include "skewloc/rng.hpp"

namespace skewloc {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
// Merge unit for compensated partial sums: fixed size, so results do not
// depend on the thread count.
constexpr std::int64_t kSuperBlock = 16 * kOrbitBlock;

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

TorusPoint as_float64(const TorusPoint& p) {
    return p.precision() == Precision::Float64 ? p : p.to_float64();
}

} // namespace

double fejer_kernel(int R, double t) {
    if (R < 1) throw std::invalid_argument("fejer_kernel: R >= 1 required");
    if (R == 1) return 1.0;
    double delta = t - std::nearbyint(t);
    if (std::fabs(delta) < 1e-9) {
        // second-order expansion at the peak
        double x = kPi * delta;
        return R * (1.0 - (static_cast<double>(R) * R - 1.0) * x * x / 3.0);
    }
    double num = std::sin(kPi * R * delta);
    double den = std::sin(kPi * delta);
    double ratio = num / den;
    return ratio * ratio / R;
}

double fejer_kernel_series(int R, double t) {
    if (R < 1) throw std::invalid_argument("fejer_kernel_series: R >= 1 required");
    Kahan acc;
    acc.add(1.0);
    for (int l = 1; l < R; ++l)
        acc.add(2.0 * (1.0 - static_cast<double>(l) / R) * std::cos(2.0 * kPi * l * t));
    return acc.sum;
}

bool fejer_majorant_check(double epsilon, int samples, int d, double C, std::uint64_t seed) {
    if (!(epsilon > 0.0) || !(epsilon < 0.5))
        throw std::invalid_argument("fejer_majorant_check: 0 < eps < 1/2 required");
    if (samples < 1) throw std::invalid_argument("fejer_majorant_check: samples >= 1 required");
    if (d < 1) throw std::invalid_argument("fejer_majorant_check: d >= 1 required");
    if (C <= 0.0) C = std::pow(4.0, d);
    const int R = std::max(1, static_cast<int>(std::floor(1.0 / (2.0 * epsilon))));
    const double scale = C * std::pow(epsilon, d);

    Rng rng(seed, 0x2f6a1);
    // Uniform over the l1 ball: uniform simplex point (d+1 exponentials) with
    // random signs per coordinate.
    std::vector<double> y(static_cast<std::size_t>(d));
    for (int s = 0; s < samples; ++s) {
        double total = 0.0;
        for (int i = 0; i <= d; ++i) {
            double e = -std::log(1.0 - rng.u01());
            if (i < d) y[static_cast<std::size_t>(i)] = e;
            total += e;
        }
        double prod = 1.0;
        for (int i = 0; i < d; ++i) {
            double coord = epsilon * y[static_cast<std::size_t>(i)] / total;
            if (rng.next_u64() & 1) coord = -coord;
            prod *= fejer_kernel(R, coord);
        }
        if (!(scale * prod >= 1.0)) return false;
    }
    return true;
}

std::vector<HitStats> hit_count_multi(const TorusPoint& x, const TorusPoint& a,
                                      const std::vector<double>& eps_list,
                                      std::int64_t L, const Frequency& omega, int threads) {
    if (L < 1) throw std::invalid_argument("hit_count: L >= 1 required");
    if (x.dim() != a.dim()) throw std::invalid_argument("hit_count: dimension mismatch");
    for (double e : eps_list)
        if (!(e > 0.0)) throw std::invalid_argument("hit_count: eps > 0 required");

    const TorusPoint xf = as_float64(x);
    const TorusPoint af = as_float64(a);
    const int d = xf.dim();
    const std::size_t n_eps = eps_list.size();

    const std::int64_t n_super = (L + kSuperBlock - 1) / kSuperBlock;
    std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(n_super),
                                                    std::vector<std::uint64_t>(n_eps, 0));

    parallel_for(static_cast<std::size_t>(n_super), threads, [&](std::size_t sb) {
        const std::int64_t lo = 1 + static_cast<std::int64_t>(sb) * kSuperBlock;
        const std::int64_t hi = std::min(L, lo + kSuperBlock - 1);
        OrbitBuffer buf(d);
        const auto& k = kernels::ops();
        for (std::int64_t n0 = lo; n0 <= hi; n0 += kOrbitBlock) {
            const std::size_t cnt = static_cast<std::size_t>(std::min<std::int64_t>(kOrbitBlock, hi - n0 + 1));
            orbit_range(xf, omega, n0, cnt, buf.data());
            k.hit_count_multi(buf.cdata(), d, cnt, af.f64().data(), eps_list.data(), n_eps,
                              partial[sb].data());
        }
    });

    std::vector<HitStats> out(n_eps);
    for (std::size_t e = 0; e < n_eps; ++e) {
        std::uint64_t count = 0;
        for (const auto& p : partial) count += p[e];
        out[e].L = L;
        out[e].epsilon = eps_list[e];
        out[e].count = static_cast<std::int64_t>(count);
        out[e].bound_ratio = static_cast<double>(count) /
                             (std::pow(eps_list[e], d) * static_cast<double>(L));
    }
    return out;
}

HitStats hit_count(const TorusPoint& x, const TorusPoint& a, double eps,
                   std::int64_t L, const Frequency& omega, int threads) {
    return hit_count_multi(x, a, {eps}, L, omega, threads)[0];
}

int weyl_case_index(const std::vector<int>& k, int d) {
    if (static_cast<int>(k.size()) != d) throw std::invalid_argument("weyl: k has wrong dimension");
    for (int i = 0; i < d; ++i)
        if (k[static_cast<std::size_t>(i)] != 0) return d - 1 - i;
    throw std::invalid_argument("weyl: k must be nonzero");
}

double weyl_bound(const std::vector<int>& k, std::int64_t L, int d, const WeylConfig& cfg) {
    const int j = weyl_case_index(k, d);
    const double lead = std::fabs(static_cast<double>(k[static_cast<std::size_t>(d - 1 - j)]));
    const double Ld = static_cast<double>(L);
    if (j == 0) return cfg.C * lead * lead;
    if (j == 1) return cfg.C * std::sqrt(lead) * std::pow(Ld, 0.75);
    const double pow2j = std::pow(2.0, j);
    return cfg.C * std::pow(lead, 1.0 / pow2j) *
           std::pow(Ld, 1.0 - 1.0 / (2.0 * pow2j) + cfg.theta);
}

WeylRecord weyl_sum(const TorusPoint& x, const std::vector<int>& k, std::int64_t L,
                    const Frequency& omega, const WeylConfig& cfg, int threads) {
    if (L < 1) throw std::invalid_argument("weyl_sum: L >= 1 required");
    const TorusPoint xf = as_float64(x);
    const int d = xf.dim();
    const int case_j = weyl_case_index(k, d); // also validates k != 0

    const std::int64_t n_super = (L + kSuperBlock - 1) / kSuperBlock;
    std::vector<std::array<double, 4>> partial(static_cast<std::size_t>(n_super), {0, 0, 0, 0});

    parallel_for(static_cast<std::size_t>(n_super), threads, [&](std::size_t sb) {
        const std::int64_t lo = 1 + static_cast<std::int64_t>(sb) * kSuperBlock;
        const std::int64_t hi = std::min(L, lo + kSuperBlock - 1);
        OrbitBuffer buf(d);
        std::vector<double> phases(static_cast<std::size_t>(kOrbitBlock));
        const auto& ops = kernels::ops();
        double sc = 0, ss = 0, cc = 0, cs = 0;
        for (std::int64_t n0 = lo; n0 <= hi; n0 += kOrbitBlock) {
            const std::size_t cnt = static_cast<std::size_t>(std::min<std::int64_t>(kOrbitBlock, hi - n0 + 1));
            orbit_range(xf, omega, n0, cnt, buf.data());
            ops.phase_dot(buf.cdata(), d, cnt, k.data(), phases.data());
            ops.sum_sincos_kahan(phases.data(), cnt, &sc, &ss, &cc, &cs);
        }
        partial[sb] = {sc, ss, cc, cs};
    });

    Kahan re, im;
    for (const auto& p : partial) {
        re.add(p[0]);
        im.add(p[1]);
    }
    WeylRecord rec;
    rec.k = k;
    rec.L = L;
    rec.value = std::hypot(re.sum, im.sum);
    rec.case_j = case_j;
    rec.predicted_bound = weyl_bound(k, L, d, cfg);
    return rec;
}

namespace {

// Half-box enumeration: rows over the last coordinate with a fixed prefix
// (k_1..k_{d-1}); prefixes with a negative leading component are dropped
// (S_{-k} = S_k).
struct BoxRow {
    std::vector<int> prefix;
    int lo = 0, hi = 0;
    std::size_t offset = 0;
};

struct BoxPlan {
    int d = 0, K = 0;
    std::vector<BoxRow> rows;
    std::size_t total = 0;
};

BoxPlan build_box_plan(int d, int K) {
    BoxPlan plan;
    plan.d = d;
    plan.K = K;
    std::vector<int> prefix(static_cast<std::size_t>(d - 1), 0);
    // enumerate prefixes lexicographically
    std::function<void(int, int)> rec = [&](int pos, int lead_sign) {
        if (pos == d - 1) {
            BoxRow row;
            row.prefix = prefix;
            if (lead_sign > 0) {
                row.lo = -K;
                row.hi = K;
            } else {
                row.lo = 1; // zero prefix: half row, k_d >= 1
                row.hi = K;
            }
            if (row.hi >= row.lo) {
                row.offset = plan.total;
                plan.total += static_cast<std::size_t>(row.hi - row.lo + 1);
                plan.rows.push_back(std::move(row));
            }
            return;
        }
        for (int v = -K; v <= K; ++v) {
            int sign = lead_sign != 0 ? lead_sign : (v > 0 ? 1 : (v < 0 ? -1 : 0));
            if (sign < 0) continue; // mirrored half
            prefix[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, sign);
        }
        prefix[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, 0);
    return plan;
}

struct BoxAccum {
    std::vector<double> acc_r, acc_i, comp_r, comp_i;
    explicit BoxAccum(std::size_t n) : acc_r(n, 0), acc_i(n, 0), comp_r(n, 0), comp_i(n, 0) {}
};

// One orbit pass accumulating sum e^{2 pi i <T^n x, k>} for every k in the
// half box. Returns per-slot complex sums in plan order.
BoxAccum scan_box(const TorusPoint& xf, const Frequency& omega, std::int64_t L,
                  const BoxPlan& plan, int threads) {
    const int d = plan.d;
    const int K = plan.K;
    const std::size_t tab_len = static_cast<std::size_t>(2 * K + 1);
    const std::int64_t n_super = (L + kSuperBlock - 1) / kSuperBlock;

    std::vector<BoxAccum> partial;
    partial.reserve(static_cast<std::size_t>(n_super));
    for (std::int64_t i = 0; i < n_super; ++i) partial.emplace_back(plan.total);

    parallel_for(static_cast<std::size_t>(n_super), threads, [&](std::size_t sb) {
        const std::int64_t lo = 1 + static_cast<std::int64_t>(sb) * kSuperBlock;
        const std::int64_t hi = std::min(L, lo + kSuperBlock - 1);
        const auto& ops = kernels::ops();
        OrbitBuffer buf(d);
        const std::size_t blk = static_cast<std::size_t>(kOrbitBlock);
        std::vector<double> base_s(static_cast<std::size_t>(d) * blk);
        std::vector<double> base_c(static_cast<std::size_t>(d) * blk);
        // per-point power tables e^{2 pi i m x_c}, m = -K..K
        std::vector<std::vector<double>> tab_r(static_cast<std::size_t>(d), std::vector<double>(tab_len));
        std::vector<std::vector<double>> tab_i(static_cast<std::size_t>(d), std::vector<double>(tab_len));
        BoxAccum& out = partial[sb];

        for (std::int64_t n0 = lo; n0 <= hi; n0 += kOrbitBlock) {
            const std::size_t cnt = static_cast<std::size_t>(std::min<std::int64_t>(kOrbitBlock, hi - n0 + 1));
            orbit_range(xf, omega, n0, cnt, buf.data());
            for (int c = 0; c < d; ++c)
                ops.sincospi2(buf.cdata()[c], cnt, base_s.data() + static_cast<std::size_t>(c) * blk,
                              base_c.data() + static_cast<std::size_t>(c) * blk);

            for (std::size_t i = 0; i < cnt; ++i) {
                for (int c = 0; c < d; ++c) {
                    auto& tr = tab_r[static_cast<std::size_t>(c)];
                    auto& ti = tab_i[static_cast<std::size_t>(c)];
                    const double er = base_c[static_cast<std::size_t>(c) * blk + i];
                    const double ei = base_s[static_cast<std::size_t>(c) * blk + i];
                    const std::size_t mid = static_cast<std::size_t>(K);
                    tr[mid] = 1.0;
                    ti[mid] = 0.0;
                    for (int m = 1; m <= K; ++m) {
                        const double pr = tr[mid + static_cast<std::size_t>(m) - 1];
                        const double pi = ti[mid + static_cast<std::size_t>(m) - 1];
                        tr[mid + static_cast<std::size_t>(m)] = pr * er - pi * ei;
                        ti[mid + static_cast<std::size_t>(m)] = pr * ei + pi * er;
                        tr[mid - static_cast<std::size_t>(m)] = tr[mid + static_cast<std::size_t>(m)];
                        ti[mid - static_cast<std::size_t>(m)] = -ti[mid + static_cast<std::size_t>(m)];
                    }
                }
                for (const BoxRow& row : plan.rows) {
                    double pr = 1.0, pi = 0.0;
                    for (int c = 0; c < d - 1; ++c) {
                        const std::size_t idx = static_cast<std::size_t>(row.prefix[static_cast<std::size_t>(c)] + K);
                        const double trc = tab_r[static_cast<std::size_t>(c)][idx];
                        const double tic = tab_i[static_cast<std::size_t>(c)][idx];
                        const double nr = pr * trc - pi * tic;
                        pi = pr * tic + pi * trc;
                        pr = nr;
                    }
                    const std::size_t start = static_cast<std::size_t>(row.lo + K);
                    const std::size_t len = static_cast<std::size_t>(row.hi - row.lo + 1);
                    ops.cmul_axpy_kahan(pr, pi,
                                        tab_r[static_cast<std::size_t>(d - 1)].data() + start,
                                        tab_i[static_cast<std::size_t>(d - 1)].data() + start, len,
                                        out.acc_r.data() + row.offset, out.acc_i.data() + row.offset,
                                        out.comp_r.data() + row.offset, out.comp_i.data() + row.offset);
                }
            }
        }
    });

    // deterministic merge in superblock order
    BoxAccum total(plan.total);
    for (const auto& p : partial) {
        for (std::size_t s = 0; s < plan.total; ++s) {
            double y = p.acc_r[s] - total.comp_r[s];
            double t = total.acc_r[s] + y;
            total.comp_r[s] = (t - total.acc_r[s]) - y;
            total.acc_r[s] = t;
            y = p.acc_i[s] - total.comp_i[s];
            t = total.acc_i[s] + y;
            total.comp_i[s] = (t - total.acc_i[s]) - y;
            total.acc_i[s] = t;
        }
    }
    return total;
}

std::size_t box_point_count(int d, int K) {
    std::size_t n = 1;
    for (int c = 0; c < d; ++c) {
        n *= static_cast<std::size_t>(2 * K + 1);
        if (n > (std::size_t{1} << 24)) return n; // let callers reject
    }
    return n;
}

} // namespace

std::vector<WeylRecord> weyl_table(const TorusPoint& x, int k_box, std::int64_t L,
                                   const Frequency& omega, const WeylConfig& cfg, int threads) {
    if (L < 1) throw std::invalid_argument("weyl_table: L >= 1 required");
    if (k_box < 1) throw std::invalid_argument("weyl_table: k_box >= 1 required");
    const TorusPoint xf = as_float64(x);
    const int d = xf.dim();
    if (box_point_count(d, k_box) > (std::size_t{1} << 24))
        throw ResourceLimitError("weyl_table: k box too large");

    const BoxPlan plan = build_box_plan(d, k_box);
    const BoxAccum acc = scan_box(xf, omega, L, plan, threads);

    // S values over the half box, then emit the full box in lexicographic
    // order (mirror entries share S).
    std::vector<WeylRecord> out;
    out.reserve(2 * plan.total);
    std::vector<std::pair<std::vector<int>, double>> half;
    half.reserve(plan.total);
    for (const BoxRow& row : plan.rows) {
        for (int m = row.lo; m <= row.hi; ++m) {
            std::vector<int> k = row.prefix;
            k.push_back(m);
            const std::size_t slot = row.offset + static_cast<std::size_t>(m - row.lo);
            half.emplace_back(std::move(k), std::hypot(acc.acc_r[slot], acc.acc_i[slot]));
        }
    }
    for (const auto& [k, s] : half) {
        WeylRecord rec;
        rec.k = k;
        rec.L = L;
        rec.value = s;
        rec.case_j = weyl_case_index(k, d);
        rec.predicted_bound = weyl_bound(k, L, d, cfg);
        out.push_back(rec);
        WeylRecord mirror = rec;
        for (auto& c : mirror.k) c = -c;
        out.push_back(std::move(mirror));
    }
    std::sort(out.begin(), out.end(), [](const WeylRecord& a, const WeylRecord& b) {
        return a.k < b.k;
    });
    return out;
}

AggregateResult weyl_aggregate(const TorusPoint& x, double eps, std::int64_t L,
                               const Frequency& omega, KNorm norm, bool enforce_regime,
                               int threads) {
    if (L < 1) throw std::invalid_argument("weyl_aggregate: L >= 1 required");
    if (!(eps > 0.0)) throw std::invalid_argument("weyl_aggregate: eps > 0 required");
    const TorusPoint xf = as_float64(x);
    const int d = xf.dim();
    if (enforce_regime) {
        const double floor_eps = std::pow(static_cast<double>(L),
                                          -1.0 / ((d + 1) * std::pow(2.0, d + 1)));
        if (!(eps > floor_eps))
            throw std::invalid_argument("weyl_aggregate: eps below the lemma regime floor");
    }

    const int K = static_cast<int>(std::floor(1.0 / eps + 1e-12)) - 1;
    AggregateResult res;
    if (K < 1) return res; // empty range
    if (box_point_count(d, K) > (std::size_t{1} << 24))
        throw ResourceLimitError("weyl_aggregate: eps too small for the box scan");

    const BoxPlan plan = build_box_plan(d, K);
    const BoxAccum acc = scan_box(xf, omega, L, plan, threads);

    Kahan total;
    for (const BoxRow& row : plan.rows) {
        int prefix_l1 = 0;
        for (int c : row.prefix) prefix_l1 += std::abs(c);
        for (int m = row.lo; m <= row.hi; ++m) {
            if (norm == KNorm::L1 && prefix_l1 + std::abs(m) > K) continue;
            const std::size_t slot = row.offset + static_cast<std::size_t>(m - row.lo);
            // mirror pair contributes the same modulus
            total.add(2.0 * std::hypot(acc.acc_r[slot], acc.acc_i[slot]));
        }
    }
    res.sum = total.sum;
    res.ratio_to_L = total.sum / static_cast<double>(L);
    return res;
}

} // namespace skewloc
