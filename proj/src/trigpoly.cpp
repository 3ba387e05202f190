#include "skewloc/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewloc/errors.hpp"
#include "skewloc/kernels/kernels.hpp"

namespace skewloc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TrigPoly::TrigPoly(int dim, bool real_valued) : dim_(dim), real_valued_(real_valued) {
    if (dim < 1 || dim > kMaxTrigDim)
        throw std::invalid_argument("TrigPoly: dim must lie in [1, 8]");
}

void TrigPoly::add_term(const std::array<int, kMaxTrigDim>& l, std::complex<double> c) {
    for (int i = dim_; i < kMaxTrigDim; ++i)
        if (l[static_cast<std::size_t>(i)] != 0)
            throw std::invalid_argument("TrigPoly::add_term: frequency exceeds dimension");
    for (auto& t : terms_) {
        if (t.l == l) {
            t.c += c;
            return;
        }
    }
    TrigTerm t;
    t.l = l;
    t.c = c;
    terms_.push_back(t);
}

void TrigPoly::freeze() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const TrigTerm& t) { return t.c == std::complex<double>(0.0, 0.0); }),
                 terms_.end());
    std::sort(terms_.begin(), terms_.end(),
              [](const TrigTerm& a, const TrigTerm& b) { return a.l < b.l; });
}

int TrigPoly::degree() const {
    int deg = 0;
    for (const auto& t : terms_)
        for (int i = 0; i < dim_; ++i)
            deg = std::max(deg, std::abs(t.l[static_cast<std::size_t>(i)]));
    return deg;
}

bool TrigPoly::conjugate_symmetric() const {
    for (const auto& t : terms_) {
        std::array<int, kMaxTrigDim> neg{};
        for (int i = 0; i < dim_; ++i) neg[static_cast<std::size_t>(i)] = -t.l[static_cast<std::size_t>(i)];
        bool found = false;
        for (const auto& u : terms_) {
            if (u.l == neg) {
                if (u.c != std::conj(t.c)) return false;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool TrigPoly::nonconstant() const {
    for (const auto& t : terms_) {
        bool zero_freq = true;
        for (int i = 0; i < dim_; ++i)
            if (t.l[static_cast<std::size_t>(i)] != 0) zero_freq = false;
        if (!zero_freq && t.c != std::complex<double>(0.0, 0.0)) return true;
    }
    return false;
}

std::complex<double> TrigPoly::eval(const TorusPoint& x) const {
    if (x.dim() != dim_) throw std::invalid_argument("TrigPoly::eval: dimension mismatch");
    double re = 0.0, im = 0.0;
    for (const auto& t : terms_) {
        double phase = 0.0;
        for (int i = 0; i < dim_; ++i)
            phase += static_cast<double>(t.l[static_cast<std::size_t>(i)]) * x.coord(i);
        const double th = kTwoPi * (phase - std::nearbyint(phase));
        const double c = std::cos(th), s = std::sin(th);
        re += t.c.real() * c - t.c.imag() * s;
        im += t.c.real() * s + t.c.imag() * c;
    }
    return {re, im};
}

double TrigPoly::eval_real(const TorusPoint& x) const {
    if (!real_valued_) throw std::invalid_argument("TrigPoly::eval_real: poly not flagged real");
    const std::complex<double> v = eval(x);
    double scale = 0.0;
    for (const auto& t : terms_) scale += std::abs(t.c);
    if (std::fabs(v.imag()) >= 1e-10 * std::max(1.0, scale))
        throw NumericError("TrigPoly::eval_real: imaginary residual too large");
    return v.real();
}

void TrigPoly::eval_batch(const double* const* coords, std::size_t n,
                          std::complex<double>* out) const {
    std::vector<double> acc_r(n, 0.0), acc_i(n, 0.0), phases(n);
    const auto& k = kernels::ops();
    int l[kMaxTrigDim];
    for (const auto& t : terms_) {
        for (int i = 0; i < dim_; ++i) l[i] = t.l[static_cast<std::size_t>(i)];
        k.phase_dot(coords, dim_, n, l, phases.data());
        k.trig_accumulate(t.c.real(), t.c.imag(), phases.data(), n, acc_r.data(), acc_i.data());
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = {acc_r[i], acc_i[i]};
}

} // namespace skewloc
