// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <vector>

#include "ffext/field.hpp"

namespace ffext {

/// The point lattice F_q^d with a fixed index map: a grid index encodes the
/// coordinate tuple in mixed radix with coordinate 1 fastest-varying,
/// idx = sum_a x_a q^a (x_a being element indices). Grids are cheap handles
/// onto shared immutable state.
class Grid {
 public:
  Grid(FieldPtr field, int dim, std::uint64_t size_cap = kDefaultSizeCap);

  const Field& field() const noexcept { return *data_->field; }
  const FieldPtr& field_ptr() const noexcept { return data_->field; }
  int dim() const noexcept { return data_->dim; }
  std::uint64_t size() const noexcept { return data_->size; }
  std::uint64_t stride(int axis) const { return data_->stride[static_cast<std::size_t>(axis)]; }

  std::uint32_t coord(std::uint64_t idx, int axis) const {
    return static_cast<std::uint32_t>((idx / stride(axis)) % field().q());
  }
  void coords(std::uint64_t idx, std::uint32_t* out) const;
  std::uint64_t index_of(std::span<const std::uint32_t> coords) const;
  std::uint64_t index_of_point(std::span<const FieldElement> point) const;
  std::vector<FieldElement> point(std::uint64_t idx) const;

  /// Number of zero coordinates of the point with this index.
  int zero_coords(std::uint64_t idx) const;

  std::uint64_t add_points(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub_points(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg_point(std::uint64_t a) const;
  /// Field element index of the dot product of the two points.
  std::uint32_t dot(std::uint64_t a, std::uint64_t b) const;

  /// q x q tables K+(a,b) = chi(a*b) and K- = conj(K+), built once per grid.
  const Eigen::MatrixXcd& character_matrix() const;
  const Eigen::MatrixXcd& character_matrix_conj() const;

  bool same_grid(const Grid& other) const {
    return data_ == other.data_ ||
           (data_->dim == other.data_->dim && field().same_spec(other.field()));
  }

 private:
  struct Data {
    FieldPtr field;
    int dim;
    std::uint64_t size;
    std::vector<std::uint64_t> stride;
    mutable std::once_flag char_once;
    mutable Eigen::MatrixXcd char_plus, char_minus;
  };
  void build_character_matrices() const;
  std::shared_ptr<Data> data_;
};

/// Complex-valued function on a grid; the value vector is a dense Eigen
/// vector indexed by grid index.
class GridFunction {
 public:
  explicit GridFunction(Grid grid)
      : grid_(std::move(grid)), values_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid_.size()))) {}
  GridFunction(Grid grid, Eigen::VectorXcd values);

  const Grid& grid() const noexcept { return grid_; }
  Eigen::VectorXcd& values() noexcept { return values_; }
  const Eigen::VectorXcd& values() const noexcept { return values_; }
  std::complex<double> operator[](std::uint64_t idx) const {
    return values_[static_cast<Eigen::Index>(idx)];
  }
  std::complex<double>& operator[](std::uint64_t idx) {
    return values_[static_cast<Eigen::Index>(idx)];
  }

  static GridFunction delta(const Grid& g, std::uint64_t at,
                            std::complex<double> amplitude = 1.0);
  static GridFunction constant(const Grid& g, std::complex<double> value);

 private:
  Grid grid_;
  Eigen::VectorXcd values_;
};

/// Independent standard complex Gaussians at every grid point.
GridFunction random_gridfunction(const Grid& g, std::mt19937_64& rng);

/// Splittable seeding: mixes a base seed with a stream index so parallel
/// tasks get decorrelated, reproducible generators.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ffext
