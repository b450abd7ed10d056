// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "ffext/variety.hpp"

namespace ffext {

/// Per-stratum statistics of (dsigma)^vee, grouped by the number of zero
/// coordinates of the frequency point.
struct StratumDecay {
  int zero_count = 0;
  std::uint64_t size = 0;
  double min_abs = 0.0;
  double max_abs = 0.0;
  /// Signed closed-form value (-1)^(d-l) (q-1)^-(d-l) on Hamming varieties
  /// for l >= 1.
  std::optional<double> reference;
  /// Largest deviation |value - reference| over the stratum.
  double max_ref_error = 0.0;
  /// Kloosterman-sum bound d q^((d-1)/2) / (q-1)^(d-1) for the zero-free
  /// stratum on Hamming varieties.
  std::optional<double> bound;
};

struct DecayProfile {
  std::string variety;
  GridFunction transform;  ///< (dsigma)^vee over the full grid
  std::vector<StratumDecay> strata;  ///< indexed by zero count 0..d
  double max_nonzero_abs = 0.0;  ///< max over m != 0
  std::uint64_t argmax_nonzero = 0;
};

DecayProfile decay_profile(const SurfaceMeasure& mu);
double max_nonzero_decay(const DecayProfile& profile);

/// sum over (F_q^*)^s of chi(a_1 x_1 + ... + a_s x_s + b / (x_1 ... x_s)),
/// with the Weil-type bound (s+1) q^(s/2) attached.
struct KloostermanResult {
  int s = 0;
  std::vector<std::uint32_t> a;  ///< coefficient element indices
  std::uint32_t b = 0;
  std::complex<double> value;
  double bound = 0.0;
};

inline constexpr std::uint64_t kDefaultTermBudget = std::uint64_t{1} << 24;

KloostermanResult kloosterman(const Field& field, std::span<const FieldElement> a, FieldElement b,
                              std::uint64_t term_budget = kDefaultTermBudget);

/// Certified lower bound (exact where flagged) for the extension constant
/// R*(2 -> r): the best ratio of the l^r norm of the extension over the
/// L^2(V, dsigma) norm of the input. `witness` reproduces `value` when fed
/// back through evaluate_ratio.
struct NormEstimate {
  double p = 2.0;
  Exponent r{2.0};
  double value = 0.0;
  bool exact = false;
  std::string method;  ///< closed-form | svd | power-iteration | test-function
  Eigen::VectorXcd witness;  ///< values on V
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::vector<double> objective_history;  ///< best restart, one entry per iteration
};

/// ||extend(f)||_r / ||f||_{L^2(V,dsigma)} for a concrete f.
double evaluate_ratio(const SurfaceMeasure& mu, const Eigen::VectorXcd& witness,
                      const Exponent& r);

/// R*(2->2) = sqrt(q^d / |V|), exact for any variety of distinct points:
/// composing the extension with its adjoint is q^d/|V| times the identity.
NormEstimate extension_norm_exact_r2(const SurfaceMeasure& mu);

/// Cross-validation route for r = 2: largest singular value of the explicit
/// q^d x |V| extension matrix. Guarded by a grid-size cap (cubic cost).
NormEstimate extension_norm_svd(const SurfaceMeasure& mu,
                                std::uint64_t max_grid = std::uint64_t{1} << 15);

/// R*(2->inf) = 1 exactly, witnessed by a conjugated character on V.
NormEstimate extension_norm_infty(const SurfaceMeasure& mu);

/// Lower bound from the fixed test function f = 1: ||(dsigma)^vee||_r.
NormEstimate extension_norm_test_function(const SurfaceMeasure& mu, const Exponent& r);

/// Ascent iteration maximizing ||extend(f)||_r over ||f||_{L^2(dsigma)} = 1:
/// extend, take the l^r duality image |u|^(r-1) sgn(u) (zero where u is
/// zero), pull back through the adjoint (transform then restrict), and
/// renormalize. The objective never decreases; the result is a certified
/// lower bound, not a proof of the supremum. Initializations: f = 1, one
/// point mass, then seeded complex Gaussians.
NormEstimate extension_norm_power(const SurfaceMeasure& mu, const Exponent& r, int restarts = 32,
                                  int max_iters = 500, std::uint64_t seed = 0);

/// Both sides of ||hat(g)||^2_{L^2(V,dsigma)} = <g, g * (dsigma)^vee>,
/// computed along independent routes.
struct RRStarCheck {
  double lhs = 0.0;
  std::complex<double> rhs;
  double residual = 0.0;  ///< |lhs - rhs|
};

RRStarCheck rr_star_check(const GridFunction& g, const SurfaceMeasure& mu);

/// Splits (dsigma)^vee along the zero-count strata and measures each piece:
/// M_k = max_x |hat((dsigma)^vee 1_{N_k})(x)|. On Hamming varieties the
/// pieces for k >= 1 are exact multiples of the stratum indicators, so
/// M_k = C(d,k) with the maximum at x = 0, and M_0 <= 2^d (q-1).
struct DecompositionReport {
  std::vector<double> stratum_max;  ///< M_k, k = 0..d
  std::vector<std::uint64_t> argmax;  ///< grid index attaining each M_k
  std::vector<double> expected;  ///< C(d,k) for k >= 1; NaN at k = 0
  double m0_bound = 0.0;  ///< 2^d (q-1)
  bool has_bilinear = false;
  std::vector<std::complex<double>> pieces;  ///< <g, g * ((dsigma)^vee 1_{N_k})>
  std::complex<double> pieces_sum;
  double lhs = 0.0;  ///< ||hat(g)||^2_{L^2(V,dsigma)}
  double residual = 0.0;  ///< |pieces_sum - lhs|
};

DecompositionReport decomposition_report(const SurfaceMeasure& mu,
                                         const GridFunction* g = nullptr);

/// r = 2(alpha+2)/alpha: the L^2 -> L^r exponent produced by variety size
/// ~ q^(d-1) together with transform decay q^(-alpha/2) away from zero.
double stein_tomas_exponent(double alpha);
/// r = 2(d-k)/(d-k-1): the conjectured sharp exponent for a variety of size
/// ~ q^(d-1) containing an affine subspace of q^k points.
double conjecture_exponent(int d, int k);

/// Additive energy: quadruples (x,y,z,w) in E^4 with x + y = z + w, counted
/// exactly through the pair-sum representation function. Sets of at most 512
/// points also get the cubic recount for cross-checking.
struct EnergyResult {
  std::uint64_t set_size = 0;
  std::uint64_t energy = 0;
  std::uint64_t floor = 0;  ///< 2|E|^2 - |E|, attained when only trivial solutions exist
  std::uint64_t ceiling = 0;  ///< |E|^3
  std::optional<std::uint64_t> cubic_energy;  ///< triple-loop recount, small sets only
};

EnergyResult additive_energy(const Grid& grid, std::span<const std::uint64_t> points,
                             std::uint64_t pair_budget = kDefaultTermBudget);
EnergyResult additive_energy(const Variety& v,
                             std::uint64_t pair_budget = kDefaultTermBudget);

}  // namespace ffext
