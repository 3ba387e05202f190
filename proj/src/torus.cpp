#include "skewloc/torus.hpp"

#include <cmath>
#include <stdexcept>

#include "skewloc/biguint.hpp"

namespace skewloc {

TorusPoint TorusPoint::from_doubles(const std::vector<double>& coords) {
    if (coords.empty()) throw std::invalid_argument("TorusPoint: d >= 1 required");
    TorusPoint p;
    p.dim_ = coords.size();
    p.mode_ = Precision::Float64;
    p.f64_.reserve(coords.size());
    for (double c : coords) {
        double r = c - std::floor(c);
        p.f64_.push_back(wrap_unit(r));
    }
    return p;
}

TorusPoint TorusPoint::from_fixed(const std::vector<Fixed256>& coords) {
    if (coords.empty()) throw std::invalid_argument("TorusPoint: d >= 1 required");
    TorusPoint p;
    p.dim_ = coords.size();
    p.mode_ = Precision::Fixed256;
    p.fx_ = coords;
    return p;
}

TorusPoint TorusPoint::to_fixed() const {
    if (mode_ == Precision::Fixed256) return *this;
    std::vector<Fixed256> fx;
    fx.reserve(dim_);
    for (double c : f64_) fx.push_back(Fixed256::from_double(c));
    return from_fixed(fx);
}

TorusPoint TorusPoint::to_float64() const {
    if (mode_ == Precision::Float64) return *this;
    std::vector<double> f;
    f.reserve(dim_);
    for (const auto& c : fx_) f.push_back(c.to_double());
    return from_doubles(f);
}

double TorusPoint::coord(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= dim_)
        throw std::invalid_argument("TorusPoint::coord: index out of range");
    return mode_ == Precision::Float64 ? f64_[static_cast<std::size_t>(i)]
                                       : fx_[static_cast<std::size_t>(i)].to_double();
}

TorusPoint skew_step(const TorusPoint& x, const Frequency& omega) {
    const std::size_t d = x.dim_;
    if (d < 2) throw std::invalid_argument("skew_step: d >= 2 required");
    TorusPoint y;
    y.dim_ = d;
    y.mode_ = x.mode_;
    if (x.mode_ == Precision::Float64) {
        y.f64_.resize(d);
        for (std::size_t i = 0; i + 1 < d; ++i)
            y.f64_[i] = wrap_unit(x.f64_[i] + x.f64_[i + 1]);
        y.f64_[d - 1] = wrap_unit(x.f64_[d - 1] + omega.value);
    } else {
        y.fx_.resize(d);
        for (std::size_t i = 0; i + 1 < d; ++i)
            y.fx_[i] = x.fx_[i].add(x.fx_[i + 1]);
        y.fx_[d - 1] = x.fx_[d - 1].add(omega.fixed);
    }
    return y;
}

TorusPoint orbit_closed_form(const TorusPoint& x0, std::int64_t n, const Frequency& omega) {
    if (n < 0) throw std::invalid_argument("orbit_closed_form: n >= 0 required");
    const std::size_t d = x0.dim_;
    // Coordinates lift exactly, so both modes share the exact fixed-point path.
    std::vector<Fixed256> base;
    base.reserve(d);
    if (x0.mode_ == Precision::Float64)
        for (double c : x0.f64_) base.push_back(Fixed256::from_double(c));
    else
        base = x0.fx_;

    // Binomials C(n,1..d) reduced mod 2^256 once, shared across coordinates.
    std::vector<BigUInt> binom(d + 1);
    for (std::size_t j = 1; j <= d; ++j)
        binom[j] = binomial_big(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(j));

    std::vector<Fixed256> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        Fixed256 acc = base[i];
        for (std::size_t j = 1; i + j < d; ++j)
            acc = acc.add(base[i + j].mul_big(binom[j]));
        acc = acc.add(omega.fixed.mul_big(binom[d - i])); // omega carries C(n, d-i)
        out[i] = acc;
    }

    TorusPoint y;
    y.dim_ = d;
    y.mode_ = x0.mode_;
    if (x0.mode_ == Precision::Float64) {
        y.f64_.reserve(d);
        for (const auto& c : out) y.f64_.push_back(c.to_double());
    } else {
        y.fx_ = out;
    }
    return y;
}

TorusPoint skew_step_inverse(const TorusPoint& y, const Frequency& omega) {
    const std::size_t d = y.dim_;
    if (d < 2) throw std::invalid_argument("skew_step_inverse: d >= 2 required");
    TorusPoint x;
    x.dim_ = d;
    x.mode_ = y.mode_;
    if (y.mode_ == Precision::Float64) {
        x.f64_.resize(d);
        x.f64_[d - 1] = wrap_unit(y.f64_[d - 1] - omega.value);
        for (std::size_t i = d - 1; i-- > 0;)
            x.f64_[i] = wrap_unit(y.f64_[i] - x.f64_[i + 1]);
    } else {
        x.fx_.resize(d);
        x.fx_[d - 1] = y.fx_[d - 1].sub(omega.fixed);
        for (std::size_t i = d - 1; i-- > 0;)
            x.fx_[i] = y.fx_[i].sub(x.fx_[i + 1]);
    }
    return x;
}

TorusPoint orbit_point_any(const TorusPoint& x0, std::int64_t n, const Frequency& omega) {
    if (n >= 0) return orbit_closed_form(x0, n, omega);
    const std::size_t d = x0.dim_;
    const std::uint64_t m = static_cast<std::uint64_t>(-n);
    std::vector<Fixed256> base;
    base.reserve(d);
    if (x0.mode_ == Precision::Float64)
        for (double c : x0.f64_) base.push_back(Fixed256::from_double(c));
    else
        base = x0.fx_;

    // C(n, j) = (-1)^j C(m+j-1, j) for n = -m
    std::vector<BigUInt> binom_abs(d + 1);
    for (std::size_t j = 1; j <= d; ++j)
        binom_abs[j] = binomial_big(m + j - 1, j);

    std::vector<Fixed256> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        Fixed256 acc = base[i];
        for (std::size_t j = 1; i + j < d; ++j) {
            Fixed256 term = base[i + j].mul_big(binom_abs[j]);
            acc = (j % 2 == 0) ? acc.add(term) : acc.sub(term);
        }
        const std::size_t jw = d - i;
        Fixed256 wterm = omega.fixed.mul_big(binom_abs[jw]);
        acc = (jw % 2 == 0) ? acc.add(wterm) : acc.sub(wterm);
        out[i] = acc;
    }

    TorusPoint y;
    y.dim_ = d;
    y.mode_ = x0.mode_;
    if (x0.mode_ == Precision::Float64) {
        y.f64_.reserve(d);
        for (const auto& c : out) y.f64_.push_back(c.to_double());
    } else {
        y.fx_ = out;
    }
    return y;
}

double torus_distance(const TorusPoint& x, const TorusPoint& a) {
    if (x.dim() != a.dim()) throw std::invalid_argument("torus_distance: dimension mismatch");
    if (x.precision() != a.precision())
        throw std::invalid_argument("torus_distance: precision mismatch");
    double sum = 0.0;
    if (x.precision() == Precision::Float64) {
        for (int i = 0; i < x.dim(); ++i) {
            double diff = std::fabs(x.f64()[static_cast<std::size_t>(i)] - a.f64()[static_cast<std::size_t>(i)]);
            sum += std::min(diff, 1.0 - diff);
        }
    } else {
        for (int i = 0; i < x.dim(); ++i) {
            Fixed256 diff = x.fx()[static_cast<std::size_t>(i)].sub(a.fx()[static_cast<std::size_t>(i)]);
            sum += diff.dist_to_int();
        }
    }
    return sum;
}

} // namespace skewloc
