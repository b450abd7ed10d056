// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include "ffext/estimates.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "ffext/parallel.hpp"

namespace ffext {

DecayProfile decay_profile(const SurfaceMeasure& mu) {
  const Variety& v = mu.variety();
  const Grid& grid = v.grid();
  const int d = grid.dim();
  const double q = static_cast<double>(grid.field().q());
  const bool is_hamming = v.hamming_parameter().has_value();

  DecayProfile out{
      .variety = v.name(),
      .transform = extend(Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size())), mu)};

  out.strata.resize(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    StratumDecay& s = out.strata[static_cast<std::size_t>(k)];
    s.zero_count = k;
    s.min_abs = std::numeric_limits<double>::infinity();
    if (is_hamming) {
      if (k >= 1) {
        const double mag = std::pow(q - 1.0, -(d - k));
        s.reference = ((d - k) % 2 == 0) ? mag : -mag;
      } else {
        s.bound = d * std::pow(q, (d - 1) / 2.0) / std::pow(q - 1.0, d - 1);
      }
    }
  }

  double max_nonzero = -1.0;
  for (std::uint64_t m = 0; m < grid.size(); ++m) {
    const std::complex<double> val = out.transform[m];
    const double mag = std::abs(val);
    StratumDecay& s = out.strata[static_cast<std::size_t>(grid.zero_coords(m))];
    ++s.size;
    s.min_abs = std::min(s.min_abs, mag);
    s.max_abs = std::max(s.max_abs, mag);
    if (s.reference)
      s.max_ref_error = std::max(s.max_ref_error, std::abs(val - *s.reference));
    if (m != 0 && mag > max_nonzero) {
      max_nonzero = mag;
      out.argmax_nonzero = m;
    }
  }
  out.max_nonzero_abs = max_nonzero;
  return out;
}

double max_nonzero_decay(const DecayProfile& profile) { return profile.max_nonzero_abs; }

KloostermanResult kloosterman(const Field& field, std::span<const FieldElement> a, FieldElement b,
                              std::uint64_t term_budget) {
  const int s = static_cast<int>(a.size());
  if (s < 1) raise(errc::bad_parameters, "need at least one summation variable");
  for (const FieldElement& c : a)
    if (c.is_zero()) raise(errc::zero_coefficient, "linear coefficients must be nonzero");
  if (b.is_zero()) raise(errc::zero_coefficient, "inverse-term coefficient must be nonzero");

  const std::uint64_t q = field.q();
  std::uint64_t terms = 1;
  for (int i = 0; i < s; ++i) {
    if (terms > term_budget / (q - 1)) raise(errc::budget_exceeded, "(q-1)^s exceeds term budget");
    terms *= q - 1;
  }

  std::vector<std::uint32_t> inv_unit(static_cast<std::size_t>(q));
  for (std::uint32_t u = 1; u < q; ++u) inv_unit[u] = field.inv_index(u);

  std::vector<std::uint32_t> x(static_cast<std::size_t>(s), 1);
  std::complex<double> acc = 0.0;
  for (std::uint64_t it = 0; it < terms; ++it) {
    std::uint32_t lin = 0, prod_inv = 1;
    for (int i = 0; i < s; ++i) {
      const std::uint32_t xi = x[static_cast<std::size_t>(i)];
      lin = field.add_index(lin, field.mul_index(a[static_cast<std::size_t>(i)].index(), xi));
      prod_inv = field.mul_index(prod_inv, inv_unit[xi]);
    }
    acc += field.chi_index(field.add_index(lin, field.mul_index(b.index(), prod_inv)));
    for (int i = 0; i < s; ++i) {
      if (++x[static_cast<std::size_t>(i)] < q) break;
      x[static_cast<std::size_t>(i)] = 1;
    }
  }

  KloostermanResult out;
  out.s = s;
  out.a.reserve(a.size());
  for (const FieldElement& c : a) out.a.push_back(c.index());
  out.b = b.index();
  out.value = acc;
  out.bound = (s + 1) * std::pow(static_cast<double>(q), s / 2.0);
  return out;
}

double evaluate_ratio(const SurfaceMeasure& mu, const Eigen::VectorXcd& witness,
                      const Exponent& r) {
  const double denom = norm_surface(witness, mu, Exponent(2.0));
  if (denom == 0.0) raise(errc::bad_input, "witness is identically zero");
  return norm_counting(extend(witness, mu), r) / denom;
}

NormEstimate extension_norm_exact_r2(const SurfaceMeasure& mu) {
  const Variety& v = mu.variety();
  NormEstimate out;
  out.r = Exponent(2.0);
  out.value = std::sqrt(static_cast<double>(v.grid().size()) / static_cast<double>(v.size()));
  out.exact = true;
  out.method = "closed-form";
  out.witness = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size()));
  return out;
}

NormEstimate extension_norm_svd(const SurfaceMeasure& mu, std::uint64_t max_grid) {
  const Variety& v = mu.variety();
  const Grid& grid = v.grid();
  if (grid.size() > max_grid)
    raise(errc::budget_exceeded, "grid too large for a dense singular value decomposition");
  const Eigen::Index rows = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXcd a(rows, cols);
  const double mass = mu.point_mass();
  const Field& f = grid.field();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const std::uint64_t x = v.points()[static_cast<std::size_t>(c)];
    for (Eigen::Index m = 0; m < rows; ++m)
      a(m, c) = mass * f.chi_index(grid.dot(static_cast<std::uint64_t>(m), x));
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinV);
  const double root_size = std::sqrt(static_cast<double>(v.size()));
  NormEstimate out;
  out.r = Exponent(2.0);
  out.value = svd.singularValues()(0) * root_size;
  out.exact = false;
  out.method = "svd";
  out.witness = svd.matrixV().col(0) * root_size;
  return out;
}

NormEstimate extension_norm_infty(const SurfaceMeasure& mu) {
  const Variety& v = mu.variety();
  NormEstimate out;
  out.r = Exponent::infinity();
  out.value = 1.0;
  out.exact = true;
  out.method = "closed-form";
  // f = conj(chi(m.x)) saturates the triangle inequality at m; m = 0 gives
  // the constant witness.
  out.witness = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size()));
  return out;
}

NormEstimate extension_norm_test_function(const SurfaceMeasure& mu, const Exponent& r) {
  const Variety& v = mu.variety();
  NormEstimate out;
  out.r = r;
  out.method = "test-function";
  out.witness = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size()));
  out.value = evaluate_ratio(mu, out.witness, r);
  return out;
}

namespace {

struct PowerRun {
  double value = 0.0;
  Eigen::VectorXcd witness;
  int iterations = 0;
  std::vector<double> history;
};

Eigen::VectorXcd normalize_surface(Eigen::VectorXcd f, const SurfaceMeasure& mu) {
  const double n = norm_surface(f, mu, Exponent(2.0));
  if (n > 0.0) f /= n;
  return f;
}

PowerRun power_iterate(const SurfaceMeasure& mu, const Exponent& r, Eigen::VectorXcd f0,
                       int max_iters, double rel_tol) {
  const Variety& v = mu.variety();
  PowerRun run;
  Eigen::VectorXcd f = normalize_surface(std::move(f0), mu);
  double prev = -1.0;
  for (int it = 0; it < max_iters; ++it) {
    GridFunction u = extend(f, mu);
    const double objective = norm_counting(u, r);
    run.history.push_back(objective);
    run.iterations = it + 1;
    if (objective == 0.0) break;
    if (prev >= 0.0 && std::abs(objective - prev) <= rel_tol * objective) {
      prev = objective;
      break;
    }
    prev = objective;
    // l^r duality image, scaled by the max to keep powers in range.
    const double rr = r.is_infinite() ? 0.0 : r.value();
    const double umax = u.values().lpNorm<Eigen::Infinity>();
    Eigen::VectorXcd w(u.values().size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const std::complex<double> ui = u.values()[i];
      const double mag = std::abs(ui);
      w[i] = mag == 0.0 ? 0.0 : std::pow(mag / umax, rr - 1.0) * (ui / mag);
    }
    GridFunction wf(u.grid(), std::move(w));
    f = normalize_surface(restrict_to(fast_hat(wf), v), mu);
  }
  run.value = prev < 0.0 ? 0.0 : prev;
  run.witness = std::move(f);
  return run;
}

}  // namespace

NormEstimate extension_norm_power(const SurfaceMeasure& mu, const Exponent& r, int restarts,
                                  int max_iters, std::uint64_t seed) {
  if (!r.is_infinite() && r.value() <= 1.0)
    raise(errc::bad_exponent, "power iteration needs r > 1");
  if (r.is_infinite()) return extension_norm_infty(mu);
  if (restarts < 1) raise(errc::bad_parameters, "need at least one restart");
  const Variety& v = mu.variety();
  const Eigen::Index cols = static_cast<Eigen::Index>(v.size());
  constexpr double kRelTol = 1e-10;

  std::vector<PowerRun> runs(static_cast<std::size_t>(restarts));
  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t i) {
    Eigen::VectorXcd f0;
    if (i == 0) {
      f0 = Eigen::VectorXcd::Ones(cols);
    } else if (i == 1) {
      f0 = Eigen::VectorXcd::Zero(cols);
      f0[0] = 1.0;
    } else {
      std::mt19937_64 rng(mix_seed(seed, i));
      std::normal_distribution<double> gauss(0.0, 1.0);
      f0.resize(cols);
      for (Eigen::Index k = 0; k < cols; ++k) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        f0[k] = std::complex<double>(re, im);
      }
    }
    runs[i] = power_iterate(mu, r, std::move(f0), max_iters, kRelTol);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value > runs[best].value) best = i;

  NormEstimate out;
  out.r = r;
  out.method = "power-iteration";
  out.restarts = restarts;
  out.seed = seed;
  out.iterations = runs[best].iterations;
  out.objective_history = std::move(runs[best].history);
  out.witness = std::move(runs[best].witness);
  out.value = evaluate_ratio(mu, out.witness, r);
  return out;
}

RRStarCheck rr_star_check(const GridFunction& g, const SurfaceMeasure& mu) {
  const Variety& v = mu.variety();
  if (!g.grid().same_grid(v.grid())) raise(errc::grid_mismatch, "function and measure grids differ");
  RRStarCheck out;
  const double lhs_norm = norm_surface(restrict_to(fast_hat(g), v), mu, Exponent(2.0));
  out.lhs = lhs_norm * lhs_norm;
  const GridFunction sigma_vee =
      extend(Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size())), mu);
  out.rhs = inner_product(g, convolve(g, sigma_vee));
  out.residual = std::abs(std::complex<double>(out.lhs, 0.0) - out.rhs);
  return out;
}

DecompositionReport decomposition_report(const SurfaceMeasure& mu, const GridFunction* g) {
  const Variety& v = mu.variety();
  if (!v.hamming_parameter())
    raise(errc::not_hamming, "decomposition is specific to Hamming measures");
  const Grid& grid = v.grid();
  const int d = grid.dim();
  const double q = static_cast<double>(grid.field().q());

  DecompositionReport out;
  const GridFunction sigma_vee =
      extend(Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size())), mu);
  const std::vector<Stratum> strata = all_strata(grid);

  out.stratum_max.resize(static_cast<std::size_t>(d) + 1);
  out.argmax.resize(static_cast<std::size_t>(d) + 1);
  out.expected.resize(static_cast<std::size_t>(d) + 1,
                      std::numeric_limits<double>::quiet_NaN());
  out.m0_bound = std::pow(2.0, d) * (q - 1.0);
  if (g) {
    out.has_bilinear = true;
    out.pieces.resize(static_cast<std::size_t>(d) + 1);
  }

  for (int k = 0; k <= d; ++k) {
    GridFunction piece(grid, sigma_vee.values().cwiseProduct(
                                 strata[static_cast<std::size_t>(k)].indicator.values()));
    const GridFunction piece_hat = fast_hat(piece);
    Eigen::Index arg = 0;
    const double mk = piece_hat.values().cwiseAbs().maxCoeff(&arg);
    out.stratum_max[static_cast<std::size_t>(k)] = mk;
    out.argmax[static_cast<std::size_t>(k)] = static_cast<std::uint64_t>(arg);
    if (k >= 1)
      out.expected[static_cast<std::size_t>(k)] = static_cast<double>(binomial(d, k));
    if (g) out.pieces[static_cast<std::size_t>(k)] = inner_product(*g, convolve(*g, piece));
  }

  if (g) {
    out.pieces_sum = 0.0;
    for (const auto& p : out.pieces) out.pieces_sum += p;
    const double lhs_norm = norm_surface(restrict_to(fast_hat(*g), v), mu, Exponent(2.0));
    out.lhs = lhs_norm * lhs_norm;
    out.residual = std::abs(std::complex<double>(out.lhs, 0.0) - out.pieces_sum);
  }
  return out;
}

double stein_tomas_exponent(double alpha) {
  if (!(alpha > 0.0)) raise(errc::bad_parameters, "decay exponent must be positive");
  return 2.0 * (alpha + 2.0) / alpha;
}

double conjecture_exponent(int d, int k) {
  if (d - k < 2) raise(errc::bad_parameters, "requires d - k >= 2");
  return 2.0 * static_cast<double>(d - k) / static_cast<double>(d - k - 1);
}

EnergyResult additive_energy(const Grid& grid, std::span<const std::uint64_t> points,
                             std::uint64_t pair_budget) {
  const std::uint64_t n = points.size();
  EnergyResult out;
  out.set_size = n;
  if (n == 0) return out;
  if (n > pair_budget / n) raise(errc::budget_exceeded, "|E|^2 exceeds pair budget");
  out.floor = 2 * n * n - n;
  out.ceiling = n * n * n;

  // r(s) = #{(x,y) in E^2 : x+y = s}; the energy is sum_s r(s)^2.
  std::uint64_t energy = 0;
  if (grid.size() <= (std::uint64_t{1} << 22)) {
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(grid.size()), 0);
    for (std::uint64_t x : points)
      for (std::uint64_t y : points) ++counts[grid.add_points(x, y)];
    for (std::uint32_t c : counts) energy += std::uint64_t{c} * c;
  } else {
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    counts.reserve(static_cast<std::size_t>(n * n));
    for (std::uint64_t x : points)
      for (std::uint64_t y : points) ++counts[grid.add_points(x, y)];
    for (const auto& [sum, c] : counts) energy += std::uint64_t{c} * c;
  }
  out.energy = energy;

  if (n <= 512) {
    std::unordered_set<std::uint64_t> set(points.begin(), points.end());
    std::uint64_t cubic = 0;
    for (std::uint64_t x : points)
      for (std::uint64_t y : points) {
        const std::uint64_t s = grid.add_points(x, y);
        for (std::uint64_t z : points)
          if (set.count(grid.sub_points(s, z))) ++cubic;
      }
    out.cubic_energy = cubic;
  }
  return out;
}

EnergyResult additive_energy(const Variety& v, std::uint64_t pair_budget) {
  return additive_energy(v.grid(), v.points(), pair_budget);
}

}  // namespace ffext
