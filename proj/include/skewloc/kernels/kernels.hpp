#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace skewloc::kernels {

enum class Backend { Scalar, Avx2 };

// Data-parallel inner loops behind the orbit scans and window assembly.
// The scalar table is the reference; vector variants must agree with it
// (bitwise for pure add/sub/compare kernels, to ~1e-14 where sin/cos enter).
struct Ops {
    // s[i] = sin(2*pi*t[i]), c[i] = cos(2*pi*t[i]) for t[i] in [0,1).
    void (*sincospi2)(const double* t, std::size_t n, double* s, double* c);

    // counts[e] += #{ i < n : sum_c min(|x_c[i]-a_c|, 1-|x_c[i]-a_c|) < eps[e] }.
    // coords holds d pointers to coordinate arrays of length n.
    void (*hit_count_multi)(const double* const* coords, int d, std::size_t n,
                            const double* a, const double* eps, std::size_t n_eps,
                            std::uint64_t* counts);

    // phases[i] = frac(sum_c k_c * x_c[i]) in [0,1).
    void (*phase_dot)(const double* const* coords, int d, std::size_t n,
                      const int* k, double* phases);

    // acc[i] += (ar + i*ai) * (tr[i] + i*ti[i]), Kahan-compensated per slot.
    void (*cmul_axpy_kahan)(double ar, double ai, const double* tr, const double* ti,
                            std::size_t n, double* acc_r, double* acc_i,
                            double* comp_r, double* comp_i);

    // acc[i] += (cr + i*ci) * e^{2*pi*i*phases[i]}.
    void (*trig_accumulate)(double cr, double ci, const double* phases, std::size_t n,
                            double* acc_r, double* acc_i);

    // Compensated accumulation of sum cos(2*pi*p), sum sin(2*pi*p) into the
    // four running scalars.
    void (*sum_sincos_kahan)(const double* phases, std::size_t n,
                             double* sum_c, double* sum_s, double* comp_c, double* comp_s);
};

const Ops& scalar_ops();
const Ops* avx2_ops(); // null when unsupported or compiled out

bool avx2_supported();
Backend active_backend();
void set_backend(Backend b);
// "auto" | "scalar" | "avx2"; returns the backend actually selected.
Backend select_backend(const std::string& preference);
const char* backend_name(Backend b);

// Active dispatch table.
const Ops& ops();

} // namespace skewloc::kernels
