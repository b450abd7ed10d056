// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ffext/errors.hpp"

namespace ffext {

// Constructors of fields and grids reject objects larger than this many
// cells unless the caller overrides the cap.
inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 24;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of GF(p^n). The index encodes the coefficient vector
/// (c_0, ..., c_{n-1}) of the residue polynomial in mixed radix,
/// idx = sum_i c_i p^i, so elements are canonical: equal index iff equal
/// coefficient vector. Elements keep a borrowed pointer to their field;
/// the Field must outlive them.
class FieldElement {
 public:
  std::uint32_t index() const noexcept { return idx_; }
  const Field& field() const noexcept { return *field_; }
  bool is_zero() const noexcept { return idx_ == 0; }

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator+(FieldElement a, std::int64_t b);
  friend FieldElement operator*(FieldElement a, std::int64_t b);
  FieldElement operator-() const;

  friend bool operator==(FieldElement a, FieldElement b);
  friend bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }

 private:
  friend class Field;
  FieldElement(const Field* f, std::uint32_t idx) : field_(f), idx_(idx) {}
  const Field* field_;
  std::uint32_t idx_;
};

FieldElement inv(FieldElement a);
FieldElement pow(FieldElement a, std::int64_t e);
std::uint32_t trace(FieldElement a);
std::complex<double> chi(FieldElement a);

/// GF(p^n) for odd prime p, with exact index-based arithmetic, the absolute
/// trace to GF(p), and the additive character a -> exp(2*pi*i*Tr(a)/p).
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree n over Z/p (comparing coefficient tuples (c_0,...,c_{n-1})), so
/// construction is deterministic across runs and platforms. For n = 1 the
/// modulus is the trivial polynomial x.
class Field {
 public:
  Field(std::uint64_t p, int n, std::uint64_t size_cap = kDefaultSizeCap);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  std::uint64_t p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  std::uint64_t q() const noexcept { return q_; }
  /// Coefficients of the modulus, constant term first, length n+1, monic.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  bool same_spec(const Field& other) const noexcept {
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
  }

  FieldElement zero() const noexcept { return FieldElement(this, 0); }
  FieldElement one() const noexcept { return FieldElement(this, 1); }
  FieldElement from_index(std::uint64_t idx) const;
  /// Integer reduced into the prime subfield.
  FieldElement from_int(std::int64_t v) const;
  /// Coefficient list, constant term first; shorter lists are zero-padded.
  FieldElement element(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(FieldElement a) const;

  /// All q elements in mixed-radix coefficient order (index order).
  std::vector<FieldElement> elements() const;
  /// The q-1 nonzero elements, same order.
  std::vector<FieldElement> units() const;

  // Index-level arithmetic. These are the hot-path entry points; the
  // FieldElement operators are thin wrappers.
  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_index(std::uint32_t a) const;
  std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_index(std::uint32_t a) const;
  std::uint32_t pow_index(std::uint32_t a, std::int64_t e) const;
  std::uint32_t trace_index(std::uint32_t a) const;
  std::complex<double> chi_index(std::uint32_t a) const;

 private:
  std::uint32_t mul_index_poly(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow_index_u64(std::uint32_t a, std::uint64_t e) const;
  void decode(std::uint64_t idx, std::uint32_t* out) const;
  std::uint64_t encode(const std::uint32_t* c) const;
  void build_reduction_rows();
  void build_log_tables();
  void build_trace_table();

  std::uint64_t p_ = 0;
  int n_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  // Row k holds the coefficients of t^(n+k) reduced mod the modulus.
  std::vector<std::uint32_t> reduction_;
  // Discrete-log tables for n >= 2 and moderate q: mul/inv become O(1).
  std::vector<std::uint32_t> exp_, log_;
  std::uint32_t generator_ = 0;
  std::vector<std::uint16_t> trace_;  // n >= 2 only; n = 1 uses the identity
  std::vector<std::complex<double>> roots_;  // p-th roots of unity
};

FieldPtr make_field(std::uint64_t p, int n = 1, std::uint64_t size_cap = kDefaultSizeCap);

bool is_prime(std::uint64_t m);
/// Factor m as p^n for prime p, if possible.
std::optional<std::pair<std::uint64_t, int>> as_prime_power(std::uint64_t m);

inline void require_same_field(FieldElement a, FieldElement b) {
  if (&a.field() != &b.field() && !a.field().same_spec(b.field()))
    raise(errc::field_mismatch, "operands belong to different fields");
}

inline bool operator==(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return a.idx_ == b.idx_;
}

inline FieldElement operator+(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field().add_index(a.idx_, b.idx_));
}
inline FieldElement operator-(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field().sub_index(a.idx_, b.idx_));
}
inline FieldElement operator*(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field().mul_index(a.idx_, b.idx_));
}
inline FieldElement operator+(FieldElement a, std::int64_t b) { return a + a.field().from_int(b); }
inline FieldElement operator*(FieldElement a, std::int64_t b) { return a * a.field().from_int(b); }
inline FieldElement FieldElement::operator-() const {
  return FieldElement(field_, field_->neg_index(idx_));
}
inline FieldElement inv(FieldElement a) {
  return a.field().from_index(a.field().inv_index(a.index()));
}
inline FieldElement pow(FieldElement a, std::int64_t e) {
  return a.field().from_index(a.field().pow_index(a.index(), e));
}
inline std::uint32_t trace(FieldElement a) { return a.field().trace_index(a.index()); }
inline std::complex<double> chi(FieldElement a) { return a.field().chi_index(a.index()); }

}  // namespace ffext
