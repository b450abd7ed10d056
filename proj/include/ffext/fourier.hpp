// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <limits>

#include "ffext/grid.hpp"

namespace ffext {

/// Lebesgue exponent in [1, inf], with infinity as a distinguished marker
/// rather than a large float.
class Exponent {
 public:
  Exponent(double s) : value_(s) {  // NOLINT: implicit by design
    if (!(s >= 1.0) || s == std::numeric_limits<double>::infinity())
      raise(errc::bad_exponent, "exponent must be a finite real >= 1 (use Exponent::infinity())");
  }
  static Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }
  bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; +inf when infinite.
  double value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Exponent() : value_(0), infinite_(true) {}
  double value_;
  bool infinite_ = false;
};

/// Dual exponent s' with 1/s + 1/s' = 1 (1 and infinity are dual).
Exponent dual_exponent(const Exponent& s);

// Forward transform: hat(g)(x) = sum_m chi(-m.x) g(m), evaluated by the
// defining double sum. fast_hat produces the same output by factoring the
// character across axes and applying the q x q one-dimensional table along
// each axis, at cost O(d q^(d+1)).
GridFunction hat(const GridFunction& g);
GridFunction fast_hat(const GridFunction& g);

// Inverse transform: vee(f)(m) = q^-d sum_x chi(m.x) f(x).
GridFunction vee(const GridFunction& f);
GridFunction fast_vee(const GridFunction& f);

/// Convolution g1*g2(m) = sum_n g1(m-n) g2(n), computed by
/// transform-multiply-invert.
GridFunction convolve(const GridFunction& g1, const GridFunction& g2);
/// Defining double sum; quadratic, for cross-checks.
GridFunction convolve_naive(const GridFunction& g1, const GridFunction& g2);

/// l^s norm with counting measure.
double norm_counting(const GridFunction& g, const Exponent& s);
/// L^s norm with normalized counting measure (weight q^-d per point).
double norm_normalized(const GridFunction& f, const Exponent& s);

/// <g, h> = sum_m g(m) conj(h(m)); conjugate-linear in the second slot.
std::complex<double> inner_product(const GridFunction& g, const GridFunction& h);

struct InterpolatedBound {
  Exponent p;
  Exponent r;
  double constant;
};

/// Exponent/constant arithmetic of complex interpolation between the two
/// operator bounds (p0,r0,M0) and (p1,r1,M1):
/// 1/p = (1-theta)/p0 + theta/p1, 1/r likewise, M = M0^(1-theta) M1^theta.
InterpolatedBound interpolated_bound(const Exponent& p0, const Exponent& r0, double m0,
                                     const Exponent& p1, const Exponent& r1, double m1,
                                     double theta);

}  // namespace ffext
