// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include "ffext/grid.hpp"

namespace ffext {

Grid::Grid(FieldPtr field, int dim, std::uint64_t size_cap) {
  if (!field) raise(errc::bad_input, "null field");
  if (dim < 2) raise(errc::bad_parameters, "dimension must be at least 2");
  auto data = std::make_shared<Data>();
  data->field = std::move(field);
  data->dim = dim;
  const std::uint64_t q = data->field->q();
  data->stride.resize(static_cast<std::size_t>(dim) + 1);
  std::uint64_t size = 1;
  for (int a = 0; a < dim; ++a) {
    data->stride[static_cast<std::size_t>(a)] = size;
    if (size > size_cap / q)
      raise(errc::size_cap_exceeded, "grid size q^d exceeds cap");
    size *= q;
  }
  data->stride[static_cast<std::size_t>(dim)] = size;
  data->size = size;
  data_ = std::move(data);
}

void Grid::coords(std::uint64_t idx, std::uint32_t* out) const {
  const std::uint64_t q = field().q();
  for (int a = 0; a < dim(); ++a) {
    out[a] = static_cast<std::uint32_t>(idx % q);
    idx /= q;
  }
}

std::uint64_t Grid::index_of(std::span<const std::uint32_t> coords) const {
  if (coords.size() != static_cast<std::size_t>(dim()))
    raise(errc::length_mismatch, "coordinate count does not match dimension");
  const std::uint64_t q = field().q();
  std::uint64_t idx = 0;
  for (int a = dim() - 1; a >= 0; --a) {
    const std::uint32_t c = coords[static_cast<std::size_t>(a)];
    if (c >= q) raise(errc::bad_input, "coordinate out of range");
    idx = idx * q + c;
  }
  return idx;
}

std::uint64_t Grid::index_of_point(std::span<const FieldElement> point) const {
  if (point.size() != static_cast<std::size_t>(dim()))
    raise(errc::length_mismatch, "coordinate count does not match dimension");
  std::uint64_t idx = 0;
  for (int a = dim() - 1; a >= 0; --a) idx = idx * field().q() + point[static_cast<std::size_t>(a)].index();
  return idx;
}

std::vector<FieldElement> Grid::point(std::uint64_t idx) const {
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(dim()));
  const std::uint64_t q = field().q();
  for (int a = 0; a < dim(); ++a) {
    out.push_back(field().from_index(idx % q));
    idx /= q;
  }
  return out;
}

int Grid::zero_coords(std::uint64_t idx) const {
  const std::uint64_t q = field().q();
  int count = 0;
  for (int a = 0; a < dim(); ++a) {
    if (idx % q == 0) ++count;
    idx /= q;
  }
  return count;
}

std::uint64_t Grid::add_points(std::uint64_t a, std::uint64_t b) const {
  const Field& f = field();
  const std::uint64_t q = f.q();
  std::uint64_t out = 0, mult = 1;
  for (int ax = 0; ax < dim(); ++ax) {
    out += mult * f.add_index(static_cast<std::uint32_t>(a % q), static_cast<std::uint32_t>(b % q));
    a /= q;
    b /= q;
    mult *= q;
  }
  return out;
}

std::uint64_t Grid::sub_points(std::uint64_t a, std::uint64_t b) const {
  const Field& f = field();
  const std::uint64_t q = f.q();
  std::uint64_t out = 0, mult = 1;
  for (int ax = 0; ax < dim(); ++ax) {
    out += mult * f.sub_index(static_cast<std::uint32_t>(a % q), static_cast<std::uint32_t>(b % q));
    a /= q;
    b /= q;
    mult *= q;
  }
  return out;
}

std::uint64_t Grid::neg_point(std::uint64_t a) const {
  const Field& f = field();
  const std::uint64_t q = f.q();
  std::uint64_t out = 0, mult = 1;
  for (int ax = 0; ax < dim(); ++ax) {
    out += mult * f.neg_index(static_cast<std::uint32_t>(a % q));
    a /= q;
    mult *= q;
  }
  return out;
}

std::uint32_t Grid::dot(std::uint64_t a, std::uint64_t b) const {
  const Field& f = field();
  const std::uint64_t q = f.q();
  std::uint32_t acc = 0;
  for (int ax = 0; ax < dim(); ++ax) {
    acc = f.add_index(acc, f.mul_index(static_cast<std::uint32_t>(a % q), static_cast<std::uint32_t>(b % q)));
    a /= q;
    b /= q;
  }
  return acc;
}

void Grid::build_character_matrices() const {
  const Field& f = field();
  const Eigen::Index q = static_cast<Eigen::Index>(f.q());
  Eigen::MatrixXcd& kp = data_->char_plus;
  kp.resize(q, q);
  for (Eigen::Index a = 0; a < q; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      const std::complex<double> v =
          f.chi_index(f.mul_index(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
      kp(a, b) = v;
      kp(b, a) = v;
    }
  }
  data_->char_minus = kp.conjugate();
}

const Eigen::MatrixXcd& Grid::character_matrix() const {
  std::call_once(data_->char_once, [this] { build_character_matrices(); });
  return data_->char_plus;
}

const Eigen::MatrixXcd& Grid::character_matrix_conj() const {
  std::call_once(data_->char_once, [this] { build_character_matrices(); });
  return data_->char_minus;
}

GridFunction::GridFunction(Grid grid, Eigen::VectorXcd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(grid_.size()))
    raise(errc::length_mismatch, "value vector does not match grid size");
}

GridFunction GridFunction::delta(const Grid& g, std::uint64_t at, std::complex<double> amplitude) {
  GridFunction out(g);
  out[at] = amplitude;
  return out;
}

GridFunction GridFunction::constant(const Grid& g, std::complex<double> value) {
  GridFunction out(g);
  out.values().setConstant(value);
  return out;
}

GridFunction random_gridfunction(const Grid& g, std::mt19937_64& rng) {
  GridFunction out(g);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index i = 0; i < out.values().size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    out.values()[i] = std::complex<double>(re, im);
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace ffext
