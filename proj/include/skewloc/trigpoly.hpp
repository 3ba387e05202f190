#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "skewloc/torus.hpp"

namespace skewloc {

inline constexpr int kMaxTrigDim = 8;

struct TrigTerm {
    std::array<int, kMaxTrigDim> l{}; // components beyond dim are zero
    std::complex<double> c;
};

// Finite trigonometric polynomial sum_l c_l e^{2 pi i <l, x>} on the d-torus.
// Terms are kept sorted by frequency vector (canonical order).
class TrigPoly {
  public:
    explicit TrigPoly(int dim, bool real_valued = false);

    int dim() const { return dim_; }
    bool real_valued() const { return real_valued_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Adds (accumulates) a coefficient; zero results are kept until freeze().
    void add_term(const std::array<int, kMaxTrigDim>& l, std::complex<double> c);
    // Sorts terms and drops exact zeros.
    void freeze();

    // max over terms of max_i |l_i|.
    int degree() const;
    // true iff coefficient(-l) == conj(coefficient(l)) exactly for all l.
    bool conjugate_symmetric() const;
    bool nonconstant() const;

    std::complex<double> eval(const TorusPoint& x) const;
    // Requires the real-valued flag; checks the imaginary residual < 1e-10.
    double eval_real(const TorusPoint& x) const;

    // out[i] = p(x_i) for SoA coordinates (d arrays of length n).
    void eval_batch(const double* const* coords, std::size_t n, std::complex<double>* out) const;

  private:
    int dim_;
    bool real_valued_;
    std::vector<TrigTerm> terms_;
};

} // namespace skewloc
