// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include "ffext/fourier.hpp"

#include <cmath>

namespace ffext {
namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!a.grid().same_grid(b.grid())) raise(errc::grid_mismatch, "functions live on different grids");
}

// In-place 1-D transform along `axis`: out(.., c', ..) = sum_c k1(c', c) in(.., c, ..).
// The layout (coordinate 1 fastest) makes every slice a contiguous
// (q^axis x q) column-major block.
void apply_axis(Eigen::VectorXcd& v, const Eigen::MatrixXcd& k1, Eigen::Index q,
                Eigen::Index inner) {
  if (inner == 1) {
    Eigen::Map<Eigen::MatrixXcd> m(v.data(), q, v.size() / q);
    Eigen::MatrixXcd tmp;
    tmp.noalias() = k1 * m;
    m = tmp;
    return;
  }
  const Eigen::Index block = inner * q;
  const Eigen::Index nblocks = v.size() / block;
  Eigen::MatrixXcd tmp(inner, q);
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    Eigen::Map<Eigen::MatrixXcd> m(v.data() + b * block, inner, q);
    tmp.noalias() = m * k1.transpose();
    m = tmp;
  }
}

GridFunction apply_all_axes(const GridFunction& g, const Eigen::MatrixXcd& k1, double scale) {
  GridFunction out(g.grid(), g.values());
  const Eigen::Index q = static_cast<Eigen::Index>(g.grid().field().q());
  Eigen::Index inner = 1;
  for (int a = 0; a < g.grid().dim(); ++a) {
    apply_axis(out.values(), k1, q, inner);
    inner *= q;
  }
  if (scale != 1.0) out.values() *= scale;
  return out;
}

// Defining double sum; O(N^2 d).
GridFunction naive_transform(const GridFunction& g, const Eigen::MatrixXcd& k1, double scale) {
  const Grid& grid = g.grid();
  const std::uint64_t n = grid.size();
  const std::uint64_t q = grid.field().q();
  const int d = grid.dim();
  GridFunction out(grid);
  std::vector<std::uint32_t> xd(static_cast<std::size_t>(d)), md(static_cast<std::size_t>(d));
  for (std::uint64_t x = 0; x < n; ++x) {
    grid.coords(x, xd.data());
    std::fill(md.begin(), md.end(), 0);
    std::complex<double> acc = 0.0;
    for (std::uint64_t m = 0; m < n; ++m) {
      std::complex<double> w = g[m];
      for (int a = 0; a < d; ++a)
        w *= k1(static_cast<Eigen::Index>(xd[static_cast<std::size_t>(a)]),
                static_cast<Eigen::Index>(md[static_cast<std::size_t>(a)]));
      acc += w;
      for (int a = 0; a < d; ++a) {  // odometer
        if (++md[static_cast<std::size_t>(a)] < q) break;
        md[static_cast<std::size_t>(a)] = 0;
      }
    }
    out[x] = scale * acc;
  }
  return out;
}

}  // namespace

Exponent dual_exponent(const Exponent& s) {
  if (s.is_infinite()) return Exponent(1.0);
  if (s.value() == 1.0) return Exponent::infinity();
  return Exponent(s.value() / (s.value() - 1.0));
}

GridFunction hat(const GridFunction& g) {
  return naive_transform(g, g.grid().character_matrix_conj(), 1.0);
}

GridFunction vee(const GridFunction& f) {
  return naive_transform(f, f.grid().character_matrix(), 1.0 / static_cast<double>(f.grid().size()));
}

GridFunction fast_hat(const GridFunction& g) {
  return apply_all_axes(g, g.grid().character_matrix_conj(), 1.0);
}

GridFunction fast_vee(const GridFunction& f) {
  return apply_all_axes(f, f.grid().character_matrix(), 1.0 / static_cast<double>(f.grid().size()));
}

GridFunction convolve(const GridFunction& g1, const GridFunction& g2) {
  require_same_grid(g1, g2);
  GridFunction h1 = fast_hat(g1);
  const GridFunction h2 = fast_hat(g2);
  h1.values().array() *= h2.values().array();
  return fast_vee(h1);
}

GridFunction convolve_naive(const GridFunction& g1, const GridFunction& g2) {
  require_same_grid(g1, g2);
  const Grid& grid = g1.grid();
  const std::uint64_t n = grid.size();
  GridFunction out(grid);
  for (std::uint64_t m = 0; m < n; ++m) {
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) acc += g1[grid.sub_points(m, k)] * g2[k];
    out[m] = acc;
  }
  return out;
}

namespace {

// (sum_i w_i |v_i|^s)^(1/s) with max-scaling so large exponents neither
// overflow nor underflow; w is a constant weight.
double weighted_lp(const Eigen::VectorXcd& v, double weight, const Exponent& s) {
  if (v.size() == 0) return 0.0;
  if (s.is_infinite()) return v.lpNorm<Eigen::Infinity>();
  const double p = s.value();
  if (p == 1.0) return weight * v.lpNorm<1>();
  if (p == 2.0) return std::sqrt(weight) * v.norm();
  const double m = v.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return 0.0;
  const double sum = (v.cwiseAbs() / m).array().pow(p).sum();
  return m * std::pow(weight * sum, 1.0 / p);
}

}  // namespace

double norm_counting(const GridFunction& g, const Exponent& s) {
  return weighted_lp(g.values(), 1.0, s);
}

double norm_normalized(const GridFunction& f, const Exponent& s) {
  return weighted_lp(f.values(), 1.0 / static_cast<double>(f.grid().size()), s);
}

std::complex<double> inner_product(const GridFunction& g, const GridFunction& h) {
  require_same_grid(g, h);
  // Eigen's dot conjugates its first argument.
  return h.values().dot(g.values());
}

InterpolatedBound interpolated_bound(const Exponent& p0, const Exponent& r0, double m0,
                                     const Exponent& p1, const Exponent& r1, double m1,
                                     double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) raise(errc::bad_parameters, "theta must lie in [0, 1]");
  if (!(m0 > 0.0) || !(m1 > 0.0)) raise(errc::bad_parameters, "operator constants must be positive");
  if (theta == 0.0) return {p0, r0, m0};
  if (theta == 1.0) return {p1, r1, m1};
  const auto mix = [theta](const Exponent& a, const Exponent& b) {
    const double rec = (1.0 - theta) * a.reciprocal() + theta * b.reciprocal();
    return rec == 0.0 ? Exponent::infinity() : Exponent(1.0 / rec);
  };
  return {mix(p0, p1), mix(r0, r1), std::pow(m0, 1.0 - theta) * std::pow(m1, theta)};
}

}  // namespace ffext
