// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ffext/fourier.hpp"

namespace ffext {

/// A point set V in F_q^d, stored as a sorted list of grid indices so that
/// repeated measure sums and transforms iterate in O(|V|). Cheap handle onto
/// shared immutable state.
class Variety {
 public:
  const Grid& grid() const noexcept { return data_->grid; }
  const std::string& name() const noexcept { return data_->name; }
  const std::vector<std::uint64_t>& points() const noexcept { return data_->points; }
  std::uint64_t size() const noexcept { return data_->points.size(); }
  bool contains(std::uint64_t idx) const;

  /// Set for varieties built by hamming(); identifies the defining product
  /// value j.
  std::optional<FieldElement> hamming_parameter() const noexcept { return data_->hamming_j; }

  /// Indicator of V as a grid function.
  GridFunction indicator() const;

  friend Variety hamming(const Grid&, FieldElement);
  friend Variety from_points(const Grid&, std::string, std::vector<std::uint64_t>);

 private:
  struct Data {
    Grid grid;
    std::string name;
    std::vector<std::uint64_t> points;
    std::optional<FieldElement> hamming_j;
    explicit Data(Grid g) : grid(std::move(g)) {}
  };
  explicit Variety(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Solution set of x_1 x_2 ... x_d = j, j != 0; cardinality (q-1)^(d-1) and
/// every coordinate of every point is a unit.
Variety hamming(const Grid& grid, FieldElement j);
/// Graph x_d = x_1^2 + ... + x_{d-1}^2.
Variety paraboloid(const Grid& grid);
/// Zero set of x_1^2 - x_2^2 + ... + x_{d-1}^2 - x_d^2 (d even).
Variety alt_quadric(const Grid& grid);
/// Solution set of x_1^2 + ... + x_d^2 = j.
Variety sphere(const Grid& grid, FieldElement j);
/// Full-grid scan of an arbitrary predicate on coordinate tuples.
Variety from_predicate(const Grid& grid, std::string name,
                       const std::function<bool(std::span<const FieldElement>)>& pred);
/// Wraps an explicit point list (deduplicated, sorted).
Variety from_points(const Grid& grid, std::string name, std::vector<std::uint64_t> points);

/// Normalized surface measure: every point of V carries mass 1/|V|.
class SurfaceMeasure {
 public:
  explicit SurfaceMeasure(Variety v) : variety_(std::move(v)) {}
  const Variety& variety() const noexcept { return variety_; }
  double point_mass() const noexcept { return 1.0 / static_cast<double>(variety_.size()); }

 private:
  Variety variety_;
};

/// Extension of f (indexed like V's point list) against the measure:
/// (f dsigma)^vee(m) = (1/|V|) sum_{x in V} chi(m.x) f(x), via the axis-factored
/// inverse transform of the zero-extension of f.
GridFunction extend(const Eigen::VectorXcd& f, const SurfaceMeasure& mu);
/// Defining sum; O(q^d |V| d), kept as the independent slow route.
GridFunction extend_naive(const Eigen::VectorXcd& f, const SurfaceMeasure& mu);

/// Samples a grid function at V's points, in point-list order.
Eigen::VectorXcd restrict_to(const GridFunction& g, const Variety& v);

/// L^s(V, dsigma) norm of values on V (weight 1/|V| per point).
double norm_surface(const Eigen::VectorXcd& f, const SurfaceMeasure& mu, const Exponent& s);

/// Points with exactly `zero_count` zero coordinates.
struct Stratum {
  int zero_count;
  std::uint64_t size;
  GridFunction indicator;
};

Stratum stratum(const Grid& grid, int k);
/// All strata k = 0..d in one pass.
std::vector<Stratum> all_strata(const Grid& grid);
/// Exact count C(d,k) (q-1)^(d-k). The cruder C(d,k) q^(d-k) overestimates
/// the set as defined; the exact form is what the indicators sum to.
std::uint64_t stratum_size(int d, std::uint64_t q, int k);

std::uint64_t binomial(int n, int k);

}  // namespace ffext
