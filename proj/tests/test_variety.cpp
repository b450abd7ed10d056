// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ffext/variety.hpp"

using namespace ffext;

namespace {

Grid grid_3_3() { return Grid(make_field(3), 3); }

// Product-of-coordinates predicate, used as the enumeration oracle for the
// parametrized constructor.
Variety hamming_by_scan(const Grid& g, FieldElement j) {
  return from_predicate(g, "hamming-scan", [&](std::span<const FieldElement> pt) {
    FieldElement prod = g.field().one();
    for (const FieldElement& c : pt) prod = prod * c;
    return prod == j;
  });
}

}  // namespace

TEST_SUITE("variety") {

TEST_CASE("hamming variety in F_3^3") {
  const Grid g = grid_3_3();
  const Variety v = hamming(g, g.field().one());
  REQUIRE(v.size() == 4);

  const std::set<std::vector<std::uint32_t>> expected = {
      {1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}};
  std::set<std::vector<std::uint32_t>> got;
  for (std::uint64_t idx : v.points()) {
    std::vector<std::uint32_t> coords(3);
    g.coords(idx, coords.data());
    got.insert(coords);
  }
  CHECK(got == expected);
  CHECK(std::is_sorted(v.points().begin(), v.points().end()));
  CHECK(v.hamming_parameter().has_value());
}

TEST_CASE("hamming matches the predicate scan and has unit coordinates") {
  std::vector<Grid> grids = {grid_3_3(), Grid(make_field(5), 3), Grid(make_field(3, 2), 2),
                             Grid(make_field(3), 4), Grid(make_field(7), 2)};
  for (const Grid& g : grids) {
    for (std::uint64_t jidx = 1; jidx < g.field().q(); ++jidx) {
      const FieldElement j = g.field().from_index(jidx);
      const Variety v = hamming(g, j);
      std::uint64_t expected_size = 1;
      for (int a = 0; a < g.dim() - 1; ++a) expected_size *= g.field().q() - 1;
      CHECK(v.size() == expected_size);
      CHECK(v.points() == hamming_by_scan(g, j).points());
      for (std::uint64_t idx : v.points()) CHECK(g.zero_coords(idx) == 0);
    }
  }
}

TEST_CASE("hamming varieties partition the zero-free stratum") {
  const Grid g = grid_3_3();
  std::set<std::uint64_t> all;
  std::uint64_t total = 0;
  for (std::uint64_t jidx = 1; jidx < 3; ++jidx) {
    const Variety v = hamming(g, g.field().from_index(jidx));
    total += v.size();
    all.insert(v.points().begin(), v.points().end());
  }
  CHECK(all.size() == total);  // disjoint
  const Stratum n0 = stratum(g, 0);
  CHECK(total == n0.size);
  for (std::uint64_t idx : all) CHECK(n0.indicator[idx] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("hamming rejects j = 0") {
  const Grid g = grid_3_3();
  CHECK_THROWS_WITH_AS(hamming(g, g.field().zero()), doctest::Contains("ZeroParameter"), Error);
}

TEST_CASE("comparison varieties") {
  const Grid g = grid_3_3();
  CHECK(paraboloid(g).size() == 9);  // graph over the first d-1 coordinates
  CHECK(sphere(g, g.field().one()).size() == 6);
  CHECK_THROWS_WITH_AS(alt_quadric(g), doctest::Contains("OddDimension"), Error);

  const Grid g4(make_field(3), 4);
  const Variety aq = alt_quadric(g4);
  CHECK(aq.size() == 33);
  // Contains the plane {(t,t,s,s)}.
  for (std::uint32_t t = 0; t < 3; ++t)
    for (std::uint32_t s = 0; s < 3; ++s)
      CHECK(aq.contains(g4.index_of(std::vector<std::uint32_t>{t, t, s, s})));

  // Builders agree with predicate scans.
  const Field& f = g.field();
  const Variety para_scan = from_predicate(g, "para-scan", [&](std::span<const FieldElement> pt) {
    return pt[2] == pt[0] * pt[0] + pt[1] * pt[1];
  });
  CHECK(paraboloid(g).points() == para_scan.points());
}

TEST_CASE("from_predicate with a trivial predicate") {
  const Grid g = grid_3_3();
  const Variety all = from_predicate(g, "all", [](std::span<const FieldElement>) { return true; });
  CHECK(all.size() == g.size());
}

TEST_CASE("from_points sorts, deduplicates and validates") {
  const Grid g = grid_3_3();
  const Variety v = from_points(g, "pts", {5, 3, 5, 11});
  CHECK(v.points() == std::vector<std::uint64_t>{3, 5, 11});
  CHECK_THROWS_AS(from_points(g, "bad", {27}), Error);
}

TEST_CASE("extension at explicit frequencies") {
  const Grid g = grid_3_3();
  const SurfaceMeasure mu{hamming(g, g.field().one())};
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(4);
  const GridFunction u = extend(ones, mu);
  // m = (0,1,1): the four phases are chi(2), chi(1), 1, 1 and chi(1)+chi(2) = -1.
  const std::uint64_t m = g.index_of(std::vector<std::uint32_t>{0, 1, 1});
  CHECK(std::abs(u[m] - std::complex<double>(0.25, 0.0)) < 1e-12);
  CHECK(std::abs(u[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("measure transform has total mass one at the origin") {
  const Grid g = grid_3_3();
  const Grid g4(make_field(3), 4);
  const std::vector<Variety> varieties = {hamming(g, g.field().one()), paraboloid(g),
                                          sphere(g, g.field().one()), alt_quadric(g4)};
  for (const Variety& v : varieties) {
    const SurfaceMeasure mu(v);
    const GridFunction u = extend(Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(v.size())), mu);
    CHECK(std::abs(u[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("fast extension equals the defining sum") {
  std::mt19937_64 rng(301);
  const Grid g = grid_3_3();
  const Grid g9(make_field(3, 2), 2);
  for (const Variety& v : {hamming(g, g.field().one()), paraboloid(g),
                           hamming(g9, g9.field().from_index(3))}) {
    const SurfaceMeasure mu(v);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXcd f(static_cast<Eigen::Index>(v.size()));
      for (Eigen::Index i = 0; i < f.size(); ++i)
        f[i] = std::complex<double>(gauss(rng), gauss(rng));
      const GridFunction a = extend(f, mu);
      const GridFunction b = extend_naive(f, mu);
      CHECK((a.values() - b.values()).lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
}

TEST_CASE("extension validates input length") {
  const Grid g = grid_3_3();
  const SurfaceMeasure mu{hamming(g, g.field().one())};
  CHECK_THROWS_WITH_AS(extend(Eigen::VectorXcd::Ones(5), mu), doctest::Contains("LengthMismatch"),
                       Error);
}

TEST_CASE("restriction samples a grid function") {
  const Grid g = grid_3_3();
  const Variety v = hamming(g, g.field().one());
  const Eigen::VectorXcd r = restrict_to(GridFunction::constant(g, 1.0), v);
  CHECK(r.size() == 4);
  CHECK((r - Eigen::VectorXcd::Ones(4)).norm() == 0.0);
  // hat(delta_0) is the constant 1, so its restriction is all ones too.
  const Eigen::VectorXcd rh = restrict_to(fast_hat(GridFunction::delta(g, 0)), v);
  CHECK((rh - Eigen::VectorXcd::Ones(4)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("restrict and extend are consistent on point masses") {
  const Grid g = grid_3_3();
  const Variety v = hamming(g, g.field().one());
  const SurfaceMeasure mu(v);
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(4);
  f[2] = 1.0;  // mass at the third point of V
  const GridFunction u = extend(f, mu);
  const std::uint64_t x = v.points()[2];
  for (std::uint64_t m = 0; m < g.size(); ++m) {
    const std::complex<double> expected = 0.25 * g.field().chi_index(g.dot(m, x));
    CHECK(std::abs(u[m] - expected) < 1e-12);
  }
}

TEST_CASE("surface norms") {
  const Grid g = grid_3_3();
  const Variety v = hamming(g, g.field().one());
  const SurfaceMeasure mu(v);
  CHECK(mu.point_mass() == doctest::Approx(0.25));
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(4);
  for (double s : {1.0, 2.0, 5.0}) CHECK(norm_surface(ones, mu, s) == doctest::Approx(1.0));
  CHECK(norm_surface(ones, mu, Exponent::infinity()) == doctest::Approx(1.0));
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(4);
  d[0] = 1.0;
  CHECK(norm_surface(d, mu, 2.0) == doctest::Approx(0.5));
  CHECK(norm_surface(d, mu, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("strata sizes and partition") {
  const Grid g = grid_3_3();
  const std::vector<Stratum> strata = all_strata(g);
  REQUIRE(strata.size() == 4);
  CHECK(strata[0].size == 8);
  CHECK(strata[1].size == 12);
  CHECK(strata[2].size == 6);
  CHECK(strata[3].size == 1);

  std::uint64_t total = 0;
  GridFunction sum(g);
  for (const Stratum& s : strata) {
    CHECK(s.size == stratum_size(g.dim(), g.field().q(), s.zero_count));
    total += s.size;
    sum.values() += s.indicator.values();
  }
  CHECK(total == g.size());
  CHECK((sum.values() - Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(g.size())))
            .lpNorm<Eigen::Infinity>() == 0.0);

  CHECK(stratum(g, 3).size == 1);
  CHECK(stratum(g, 0).size == 8);  // (q-1)^d
  CHECK_THROWS_WITH_AS(stratum(g, 4), doctest::Contains("BadStratum"), Error);
  CHECK_THROWS_AS(stratum(g, -1), Error);
}

TEST_CASE("stratum size formula across parameters") {
  for (const Grid& g : {Grid(make_field(5), 3), Grid(make_field(3, 2), 2), Grid(make_field(3), 4)}) {
    std::uint64_t total = 0;
    for (int k = 0; k <= g.dim(); ++k) {
      const Stratum s = stratum(g, k);
      CHECK(s.size == stratum_size(g.dim(), g.field().q(), k));
      total += s.size;
    }
    CHECK(total == g.size());
  }
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
}

}  // TEST_SUITE
