// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include "ffext/field.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace ffext {
namespace {

constexpr std::uint64_t kLogTableGate = std::uint64_t{1} << 20;
constexpr int kMaxDegree = 30;

std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv_prime(std::uint64_t a, std::uint64_t p) { return mod_pow_u64(a, p - 2, p); }

// Dense polynomials over Z/p, coefficients little-endian (constant first).
using Poly = std::vector<std::uint32_t>;

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
  }
  Poly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p);
  return out;
}

// Remainder of a by monic f.
Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  const int df = poly_deg(f);
  for (int i = poly_deg(a); i >= df; --i) {
    const std::uint64_t c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= df; ++j) {
      const std::size_t k = static_cast<std::size_t>(i - df + j);
      const std::uint64_t sub = (c * f[static_cast<std::size_t>(j)]) % p;
      a[k] = static_cast<std::uint32_t>((a[k] + p - sub) % p);
    }
  }
  a.resize(static_cast<std::size_t>(df));
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  return poly_mod(poly_mul(a, b, p), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  while (poly_deg(b) >= 0) {
    // Normalize b to monic so poly_mod applies.
    Poly bm = b;
    const std::uint64_t lead = bm[static_cast<std::size_t>(poly_deg(bm))];
    if (lead != 1) {
      const std::uint64_t s = mod_inv_prime(lead, p);
      for (auto& c : bm) c = static_cast<std::uint32_t>((c * s) % p);
    }
    Poly r = poly_mod(std::move(a), bm, p);
    a = std::move(bm);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

// Rabin's criterion: f (monic, degree n) is irreducible over Z/p iff
// x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1 for every prime l | n.
bool poly_is_irreducible(const Poly& f, std::uint64_t p) {
  const int n = poly_deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  for (std::uint64_t l : prime_factors(static_cast<std::uint64_t>(n))) {
    std::uint64_t e = 1;
    for (int i = 0; i < n / static_cast<int>(l); ++i) e *= p;
    Poly h = poly_powmod(x, e, f, p);
    Poly g = poly_gcd(f, poly_sub(std::move(h), x, p), p);
    if (poly_deg(g) != 0) return false;
  }
  std::uint64_t e = 1;
  for (int i = 0; i < n; ++i) e *= p;
  Poly h = poly_powmod(x, e, f, p);
  return poly_deg(poly_sub(std::move(h), x, p)) < 0;
}

// Lexicographically smallest monic irreducible of degree n over Z/p,
// comparing the tuples (c_0, ..., c_{n-1}).
Poly smallest_irreducible(std::uint64_t p, int n) {
  Poly f(static_cast<std::size_t>(n) + 1, 0);
  f[static_cast<std::size_t>(n)] = 1;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    // c_0 is the most significant digit of `code`, so ascending codes walk
    // the tuples (c_0, ..., c_{n-1}) in lexicographic order.
    std::uint64_t rem = code;
    for (int i = n - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rem % p);
      rem /= p;
    }
    if (f[0] != 0 && poly_is_irreducible(f, p)) return f;
  }
  raise(errc::bad_parameters, "no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint64_t, int>> as_prime_power(std::uint64_t m) {
  if (m < 2) return std::nullopt;
  std::uint64_t p = m;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  int n = 0;
  std::uint64_t rem = m;
  while (rem % p == 0) {
    rem /= p;
    ++n;
  }
  if (rem != 1) return std::nullopt;
  return std::make_pair(p, n);
}

Field::Field(std::uint64_t p, int n, std::uint64_t size_cap) {
  if (p < 2) raise(errc::non_prime, "characteristic must be a prime");
  if (p == 2) raise(errc::even_characteristic, "characteristic 2 is not supported");
  if (p % 2 == 0 || !is_prime(p)) raise(errc::non_prime, std::to_string(p) + " is not prime");
  if (n < 1 || n > kMaxDegree)
    raise(errc::degree_out_of_range, "extension degree " + std::to_string(n));

  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    if (q > size_cap / p)
      raise(errc::size_cap_exceeded,
            "field size " + std::to_string(p) + "^" + std::to_string(n) + " exceeds cap");
    q *= p;
  }
  p_ = p;
  n_ = n;
  q_ = q;

  if (n == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = smallest_irreducible(p, n);
    build_reduction_rows();
    if (q_ <= kLogTableGate) build_log_tables();
    build_trace_table();
  }

  roots_.resize(static_cast<std::size_t>(p_));
  for (std::uint64_t k = 0; k < p_; ++k)
    roots_[static_cast<std::size_t>(k)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p_));
}

void Field::build_reduction_rows() {
  // Row k: coefficients of t^(n+k) mod modulus, for k = 0..n-2.
  const int n = n_;
  reduction_.assign(static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> cur(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    cur[static_cast<std::size_t>(i)] =
        static_cast<std::uint32_t>((p_ - modulus_[static_cast<std::size_t>(i)]) % p_);
  for (int k = 0; k < n - 1; ++k) {
    std::copy(cur.begin(), cur.end(), reduction_.begin() + k * n);
    if (k + 1 < n - 1) {
      // Multiply by t: shift up and fold the overflowing t^n term back in.
      const std::uint64_t top = cur[static_cast<std::size_t>(n - 1)];
      for (int i = n - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
      cur[0] = 0;
      if (top != 0) {
        const std::uint32_t* r0 = reduction_.data();
        for (int i = 0; i < n; ++i)
          cur[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
              (cur[static_cast<std::size_t>(i)] + top * r0[i]) % p_);
      }
    }
  }
}

void Field::decode(std::uint64_t idx, std::uint32_t* out) const {
  for (int i = 0; i < n_; ++i) {
    out[i] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
}

std::uint64_t Field::encode(const std::uint32_t* c) const {
  std::uint64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + c[i];
  return idx;
}

std::uint32_t Field::mul_index_poly(std::uint32_t a, std::uint32_t b) const {
  const int n = n_;
  std::uint32_t ca[kMaxDegree], cb[kMaxDegree];
  decode(a, ca);
  decode(b, cb);
  std::uint64_t acc[2 * kMaxDegree - 1] = {};
  for (int i = 0; i < n; ++i) {
    if (ca[i] == 0) continue;
    for (int j = 0; j < n; ++j) acc[i + j] += std::uint64_t{ca[i]} * cb[j];
  }
  std::uint32_t out[kMaxDegree];
  for (int i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p_);
  for (int k = 2 * n - 2; k >= n; --k) {
    const std::uint64_t c = acc[k] % p_;
    if (c == 0) continue;
    const std::uint32_t* row = reduction_.data() + static_cast<std::size_t>(k - n) * n;
    for (int i = 0; i < n; ++i)
      out[i] = static_cast<std::uint32_t>((out[i] + c * row[i]) % p_);
  }
  return static_cast<std::uint32_t>(encode(out));
}

std::uint32_t Field::pow_index_u64(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1, base = a;
  while (e) {
    if (e & 1) r = mul_index_poly(r, base);
    base = mul_index_poly(base, base);
    e >>= 1;
  }
  return r;
}

void Field::build_log_tables() {
  // Find the first generator of the unit group in index order, then lay out
  // exp/log tables so mul and inv are table lookups.
  const std::vector<std::uint64_t> factors = prime_factors(q_ - 1);
  std::uint32_t gen = 0;
  for (std::uint32_t cand = 2; cand < q_; ++cand) {
    bool ok = true;
    for (std::uint64_t l : factors) {
      if (pow_index_u64(cand, (q_ - 1) / l) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = cand;
      break;
    }
  }
  assert(gen != 0);
  generator_ = gen;
  exp_.resize(static_cast<std::size_t>(q_ - 1));
  log_.assign(static_cast<std::size_t>(q_), 0);
  std::uint32_t acc = 1;
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    exp_[static_cast<std::size_t>(i)] = acc;
    log_[acc] = static_cast<std::uint32_t>(i);
    acc = mul_index_poly(acc, gen);
  }
  assert(acc == 1);
}

void Field::build_trace_table() {
  const int n = n_;
  // Traces of the power basis via the Frobenius orbit of t, then extend
  // additively to all elements.
  const std::uint32_t t_idx = static_cast<std::uint32_t>(p_);
  std::vector<std::uint32_t> frob(static_cast<std::size_t>(n));
  std::uint64_t pk = 1;
  for (int j = 0; j < n; ++j) {
    frob[static_cast<std::size_t>(j)] = pow_index_u64(t_idx, pk);
    pk *= p_;
  }
  std::vector<std::uint32_t> basis_trace(static_cast<std::size_t>(n));
  std::vector<std::uint32_t> w(static_cast<std::size_t>(n), 1);
  std::uint32_t digits[kMaxDegree];
  for (int i = 0; i < n; ++i) {
    std::uint32_t s = 0;
    for (int j = 0; j < n; ++j) s = add_index(s, w[static_cast<std::size_t>(j)]);
    decode(s, digits);
    for (int j = 1; j < n; ++j) assert(digits[j] == 0);
    basis_trace[static_cast<std::size_t>(i)] = digits[0];
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(j)] = mul_index_poly(w[static_cast<std::size_t>(j)], frob[static_cast<std::size_t>(j)]);
  }
  trace_.resize(static_cast<std::size_t>(q_));
  for (std::uint64_t idx = 0; idx < q_; ++idx) {
    decode(idx, digits);
    std::uint64_t s = 0;
    for (int i = 0; i < n; ++i) s += std::uint64_t{digits[i]} * basis_trace[static_cast<std::size_t>(i)];
    trace_[static_cast<std::size_t>(idx)] = static_cast<std::uint16_t>(s % p_);
  }
}

std::uint32_t Field::add_index(std::uint32_t a, std::uint32_t b) const {
  if (n_ == 1) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t ca[kMaxDegree], cb[kMaxDegree];
  decode(a, ca);
  decode(b, cb);
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t s = std::uint64_t{ca[i]} + cb[i];
    ca[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return static_cast<std::uint32_t>(encode(ca));
}

std::uint32_t Field::neg_index(std::uint32_t a) const {
  if (n_ == 1) return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a);
  std::uint32_t c[kMaxDegree];
  decode(a, c);
  for (int i = 0; i < n_; ++i) c[i] = c[i] == 0 ? 0 : static_cast<std::uint32_t>(p_ - c[i]);
  return static_cast<std::uint32_t>(encode(c));
}

std::uint32_t Field::sub_index(std::uint32_t a, std::uint32_t b) const {
  return add_index(a, neg_index(b));
}

std::uint32_t Field::mul_index(std::uint32_t a, std::uint32_t b) const {
  if (n_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[static_cast<std::size_t>(e)];
  }
  return mul_index_poly(a, b);
}

std::uint32_t Field::inv_index(std::uint32_t a) const {
  if (a == 0) raise(errc::zero_inverse, "inverse of zero");
  if (n_ == 1) return static_cast<std::uint32_t>(mod_inv_prime(a, p_));
  if (!exp_.empty()) {
    const std::uint32_t l = log_[a];
    return l == 0 ? 1 : exp_[static_cast<std::size_t>(q_ - 1 - l)];
  }
  return pow_index_u64(a, q_ - 2);
}

std::uint32_t Field::pow_index(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    raise(errc::zero_inverse, "negative power of zero");
  }
  std::uint64_t exp_red;
  if (e >= 0) {
    exp_red = static_cast<std::uint64_t>(e) % (q_ - 1);
  } else {
    const std::uint64_t m = static_cast<std::uint64_t>(-e) % (q_ - 1);
    exp_red = m == 0 ? 0 : q_ - 1 - m;
  }
  if (n_ == 1) return static_cast<std::uint32_t>(mod_pow_u64(a, exp_red, p_));
  return pow_index_u64(a, exp_red);
}

std::uint32_t Field::trace_index(std::uint32_t a) const {
  return n_ == 1 ? a : trace_[a];
}

std::complex<double> Field::chi_index(std::uint32_t a) const { return roots_[trace_index(a)]; }

FieldElement Field::from_index(std::uint64_t idx) const {
  if (idx >= q_) raise(errc::bad_input, "element index out of range");
  return FieldElement(this, static_cast<std::uint32_t>(idx));
}

FieldElement Field::from_int(std::int64_t v) const {
  const std::int64_t p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return FieldElement(this, static_cast<std::uint32_t>(r));
}

FieldElement Field::element(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(n_))
    raise(errc::length_mismatch, "coefficient list longer than extension degree");
  std::uint32_t c[kMaxDegree] = {};
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    c[i] = static_cast<std::uint32_t>(coeffs[i] % p_);
  return FieldElement(this, static_cast<std::uint32_t>(encode(c)));
}

std::vector<std::uint32_t> Field::coeffs(FieldElement a) const {
  std::uint32_t c[kMaxDegree];
  decode(a.index(), c);
  return std::vector<std::uint32_t>(c, c + n_);
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(q_));
  for (std::uint64_t i = 0; i < q_; ++i) out.push_back(FieldElement(this, static_cast<std::uint32_t>(i)));
  return out;
}

std::vector<FieldElement> Field::units() const {
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(q_ - 1));
  for (std::uint64_t i = 1; i < q_; ++i) out.push_back(FieldElement(this, static_cast<std::uint32_t>(i)));
  return out;
}

FieldPtr make_field(std::uint64_t p, int n, std::uint64_t size_cap) {
  return std::make_shared<const Field>(p, n, size_cap);
}

}  // namespace ffext
