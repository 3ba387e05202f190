#pragma once

#include <cstdint>
#include <vector>

#include "skewloc/fixed256.hpp"
#include "skewloc/frequency.hpp"

namespace skewloc {

enum class Precision { Float64, Fixed256 };

// A point of the d-torus. Every coordinate lies in [0,1) after any
// operation; binary operations require matching dimension and precision.
class TorusPoint {
  public:
    TorusPoint() = default;
    static TorusPoint from_doubles(const std::vector<double>& coords);
    static TorusPoint from_fixed(const std::vector<Fixed256>& coords);
    // Exact lift of a float64 point to fixed-point coordinates.
    TorusPoint to_fixed() const;
    // Rounds fixed-point coordinates to float64.
    TorusPoint to_float64() const;

    int dim() const { return static_cast<int>(dim_); }
    Precision precision() const { return mode_; }

    double coord(int i) const;
    const std::vector<double>& f64() const { return f64_; }
    const std::vector<Fixed256>& fx() const { return fx_; }

  private:
    std::size_t dim_ = 0;
    Precision mode_ = Precision::Float64;
    std::vector<double> f64_;
    std::vector<Fixed256> fx_;
    friend TorusPoint skew_step(const TorusPoint&, const Frequency&);
    friend TorusPoint orbit_closed_form(const TorusPoint&, std::int64_t, const Frequency&);
};

// One application of the skew shift:
//   y_i = x_i + x_{i+1} (i < d),  y_d = x_d + omega   (all mod 1).
TorusPoint skew_step(const TorusPoint& x, const Frequency& omega);

// T^n x in closed form via exact binomial coefficients:
//   (T^n x)_i = x_i + C(n,1) x_{i+1} + ... + C(n,d-i) x_d + C(n,d-i+1) omega.
// Products are reduced mod 1 in 256-bit fixed point; the float64 mode lifts
// the coordinates exactly, reduces in fixed point, and rounds once at the end.
TorusPoint orbit_closed_form(const TorusPoint& x0, std::int64_t n, const Frequency& omega);

// T^n x for any integer n (the skew shift is invertible): negative n uses the
// generalized binomials C(n,j) = (-1)^j C(|n|+j-1, j) in the same closed form.
TorusPoint orbit_point_any(const TorusPoint& x0, std::int64_t n, const Frequency& omega);

// One application of the inverse shift.
TorusPoint skew_step_inverse(const TorusPoint& y, const Frequency& omega);

// Sum over coordinates of the distance to the nearest integer; in [0, d/2].
double torus_distance(const TorusPoint& x, const TorusPoint& a);

// mod-1 reduction helper for float64 sums of two values in [0,1).
inline double wrap_unit(double v) {
    if (v >= 1.0) v -= 1.0;
    if (v < 0.0) v += 1.0;
    if (v >= 1.0) v = 0.0; // guards rounding at the seam
    return v;
}

} // namespace skewloc
