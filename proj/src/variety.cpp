// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include "ffext/variety.hpp"

#include <algorithm>

namespace ffext {

bool Variety::contains(std::uint64_t idx) const {
  return std::binary_search(data_->points.begin(), data_->points.end(), idx);
}

GridFunction Variety::indicator() const {
  GridFunction out(grid());
  for (std::uint64_t p : points()) out[p] = 1.0;
  return out;
}

Variety from_points(const Grid& grid, std::string name, std::vector<std::uint64_t> points) {
  for (std::uint64_t p : points)
    if (p >= grid.size()) raise(errc::bad_input, "point index out of range");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto data = std::make_shared<Variety::Data>(grid);
  data->name = std::move(name);
  data->points = std::move(points);
  return Variety(std::move(data));
}

Variety hamming(const Grid& grid, FieldElement j) {
  const Field& f = grid.field();
  if (!f.same_spec(j.field())) raise(errc::field_mismatch, "parameter from a different field");
  if (j.is_zero()) raise(errc::zero_parameter, "hamming parameter j must be nonzero");
  const int d = grid.dim();
  const std::uint64_t q = f.q();
  const std::uint64_t units = q - 1;
  std::uint64_t count = 1;
  for (int a = 0; a < d - 1; ++a) count *= units;

  std::vector<std::uint64_t> pts;
  pts.reserve(static_cast<std::size_t>(count));
  // Free coordinates x_1..x_{d-1} range over units; x_d = j / (x_1...x_{d-1}).
  std::vector<std::uint32_t> x(static_cast<std::size_t>(d - 1), 1);
  for (std::uint64_t it = 0; it < count; ++it) {
    std::uint32_t prod = 1;
    std::uint64_t idx = 0;
    for (int a = d - 2; a >= 0; --a) {
      prod = f.mul_index(prod, x[static_cast<std::size_t>(a)]);
      idx = idx * q + x[static_cast<std::size_t>(a)];
    }
    const std::uint32_t last = f.mul_index(j.index(), f.inv_index(prod));
    pts.push_back(idx + grid.stride(d - 1) * last);
    for (int a = 0; a < d - 1; ++a) {  // odometer over units
      if (++x[static_cast<std::size_t>(a)] < q) break;
      x[static_cast<std::size_t>(a)] = 1;
    }
  }

  auto data = std::make_shared<Variety::Data>(grid);
  data->name = "hamming";
  data->points = std::move(pts);
  std::sort(data->points.begin(), data->points.end());
  data->hamming_j = j;
  return Variety(std::move(data));
}

Variety paraboloid(const Grid& grid) {
  const Field& f = grid.field();
  const int d = grid.dim();
  const std::uint64_t q = f.q();
  std::uint64_t count = 1;
  for (int a = 0; a < d - 1; ++a) count *= q;
  std::vector<std::uint64_t> pts;
  pts.reserve(static_cast<std::size_t>(count));
  std::vector<std::uint32_t> x(static_cast<std::size_t>(d - 1), 0);
  for (std::uint64_t it = 0; it < count; ++it) {
    std::uint32_t s = 0;
    std::uint64_t idx = 0;
    for (int a = d - 2; a >= 0; --a) {
      const std::uint32_t c = x[static_cast<std::size_t>(a)];
      s = f.add_index(s, f.mul_index(c, c));
      idx = idx * q + c;
    }
    pts.push_back(idx + grid.stride(d - 1) * s);
    for (int a = 0; a < d - 1; ++a) {
      if (++x[static_cast<std::size_t>(a)] < q) break;
      x[static_cast<std::size_t>(a)] = 0;
    }
  }
  return from_points(grid, "paraboloid", std::move(pts));
}

Variety alt_quadric(const Grid& grid) {
  if (grid.dim() % 2 != 0)
    raise(errc::odd_dimension, "alternating quadric requires even dimension");
  const Field& f = grid.field();
  const int d = grid.dim();
  std::vector<std::uint64_t> pts;
  std::vector<std::uint32_t> c(static_cast<std::size_t>(d));
  for (std::uint64_t idx = 0; idx < grid.size(); ++idx) {
    grid.coords(idx, c.data());
    std::uint32_t s = 0;
    for (int a = 0; a < d; ++a) {
      const std::uint32_t sq = f.mul_index(c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(a)]);
      s = a % 2 == 0 ? f.add_index(s, sq) : f.sub_index(s, sq);
    }
    if (s == 0) pts.push_back(idx);
  }
  return from_points(grid, "alt_quadric", std::move(pts));
}

Variety sphere(const Grid& grid, FieldElement j) {
  const Field& f = grid.field();
  if (!f.same_spec(j.field())) raise(errc::field_mismatch, "parameter from a different field");
  const int d = grid.dim();
  std::vector<std::uint64_t> pts;
  std::vector<std::uint32_t> c(static_cast<std::size_t>(d));
  for (std::uint64_t idx = 0; idx < grid.size(); ++idx) {
    grid.coords(idx, c.data());
    std::uint32_t s = 0;
    for (int a = 0; a < d; ++a)
      s = f.add_index(s, f.mul_index(c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(a)]));
    if (s == j.index()) pts.push_back(idx);
  }
  return from_points(grid, "sphere", std::move(pts));
}

Variety from_predicate(const Grid& grid, std::string name,
                       const std::function<bool(std::span<const FieldElement>)>& pred) {
  std::vector<std::uint64_t> pts;
  for (std::uint64_t idx = 0; idx < grid.size(); ++idx) {
    const std::vector<FieldElement> point = grid.point(idx);
    if (pred(point)) pts.push_back(idx);
  }
  return from_points(grid, std::move(name), std::move(pts));
}

GridFunction extend(const Eigen::VectorXcd& f, const SurfaceMeasure& mu) {
  const Variety& v = mu.variety();
  if (f.size() != static_cast<Eigen::Index>(v.size()))
    raise(errc::length_mismatch, "value count does not match variety size");
  GridFunction ext(v.grid());
  const auto& pts = v.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    ext[pts[i]] = f[static_cast<Eigen::Index>(i)];
  GridFunction out = fast_vee(ext);
  out.values() *= static_cast<double>(v.grid().size()) * mu.point_mass();
  return out;
}

GridFunction extend_naive(const Eigen::VectorXcd& f, const SurfaceMeasure& mu) {
  const Variety& v = mu.variety();
  if (f.size() != static_cast<Eigen::Index>(v.size()))
    raise(errc::length_mismatch, "value count does not match variety size");
  const Grid& grid = v.grid();
  const Field& fld = grid.field();
  GridFunction out(grid);
  const double mass = mu.point_mass();
  for (std::uint64_t m = 0; m < grid.size(); ++m) {
    std::complex<double> acc = 0.0;
    const auto& pts = v.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      acc += fld.chi_index(grid.dot(m, pts[i])) * f[static_cast<Eigen::Index>(i)];
    out[m] = mass * acc;
  }
  return out;
}

Eigen::VectorXcd restrict_to(const GridFunction& g, const Variety& v) {
  if (!g.grid().same_grid(v.grid())) raise(errc::grid_mismatch, "function and variety grids differ");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  const auto& pts = v.points();
  for (std::size_t i = 0; i < pts.size(); ++i) out[static_cast<Eigen::Index>(i)] = g[pts[i]];
  return out;
}

double norm_surface(const Eigen::VectorXcd& f, const SurfaceMeasure& mu, const Exponent& s) {
  if (f.size() != static_cast<Eigen::Index>(mu.variety().size()))
    raise(errc::length_mismatch, "value count does not match variety size");
  if (s.is_infinite()) return f.size() == 0 ? 0.0 : f.lpNorm<Eigen::Infinity>();
  const double p = s.value();
  if (p == 1.0) return mu.point_mass() * f.lpNorm<1>();
  if (p == 2.0) return std::sqrt(mu.point_mass()) * f.norm();
  const double m = f.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return 0.0;
  const double sum = (f.cwiseAbs() / m).array().pow(p).sum();
  return m * std::pow(mu.point_mass() * sum, 1.0 / p);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

std::uint64_t stratum_size(int d, std::uint64_t q, int k) {
  std::uint64_t out = binomial(d, k);
  for (int i = 0; i < d - k; ++i) out *= q - 1;
  return out;
}

Stratum stratum(const Grid& grid, int k) {
  if (k < 0 || k > grid.dim()) raise(errc::bad_stratum, "zero count out of range");
  GridFunction ind(grid);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < grid.size(); ++idx) {
    if (grid.zero_coords(idx) == k) {
      ind[idx] = 1.0;
      ++count;
    }
  }
  return Stratum{k, count, std::move(ind)};
}

std::vector<Stratum> all_strata(const Grid& grid) {
  std::vector<Stratum> out;
  out.reserve(static_cast<std::size_t>(grid.dim()) + 1);
  for (int k = 0; k <= grid.dim(); ++k)
    out.push_back(Stratum{k, 0, GridFunction(grid)});
  for (std::uint64_t idx = 0; idx < grid.size(); ++idx) {
    const int k = grid.zero_coords(idx);
    out[static_cast<std::size_t>(k)].indicator[idx] = 1.0;
    ++out[static_cast<std::size_t>(k)].size;
  }
  return out;
}

}  // namespace ffext
