// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "builders.hpp"
#include "toricheight/errors.hpp"
#include "toricheight/roof.hpp"

namespace toricheight {
namespace {

using Q = Rational;

std::vector<Q> rationals(std::initializer_list<long> v) {
  std::vector<Q> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

LatticePointSet segment(std::int64_t r) { return testing::line_points(static_cast<std::size_t>(r)); }

LatticePointSet unit_triangle() { return LatticePointSet(2, {{0, 0}, {1, 0}, {0, 1}}); }

TEST(LatticePointSet, Invariants) {
  EXPECT_THROW(LatticePointSet(1, {{0}, {2}}), InvalidInput);              // index 2 sublattice
  EXPECT_THROW(LatticePointSet(2, {{0, 0}, {1, 0}, {2, 0}}), InvalidInput);  // flat
  EXPECT_THROW(PointConfiguration(2, {{0, 0}, {1, 0}, {2, 0}}), DomainError);
  EXPECT_THROW(LatticePointSet(1, {{1}, {2}}), InvalidInput);              // m_0 != 0
  EXPECT_NO_THROW(LatticePointSet(2, {{0, 0}, {2, 1}, {1, 1}}));
  EXPECT_TRUE(generates_integer_lattice(2, std::vector<LatticePoint>{{0, 0}, {2, 0}, {3, 0}, {0, 1}}));
  EXPECT_FALSE(generates_integer_lattice(2, std::vector<LatticePoint>{{0, 0}, {2, 0}, {0, 2}, {2, 2}}));
}

TEST(PointConfiguration, VolumeAndTriangulation) {
  PointConfiguration square(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 0}});
  EXPECT_EQ(square.volume(), Q(1));
  Q total = 0;
  for (auto s : square.pulling_triangulation()) total += square.simplices()[s].volume;
  EXPECT_EQ(total, Q(1));
  EXPECT_EQ(square.pulling_triangulation().size(), 2u);
  PointConfiguration tetra(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(tetra.volume(), Q(1, 6));
}

TEST(UpperEnvelope, TentAndFlat) {
  const auto tent = upper_envelope<Q>(segment(2), rationals({0, 1, 0}));
  EXPECT_EQ(tent.cells().size(), 2u);
  EXPECT_EQ(tent.integral(), Q(1));
  const std::vector<Q> half{Q(1, 2)};
  EXPECT_EQ(tent(half), Q(1, 2));
  const std::vector<Q> two{Q(2)};
  EXPECT_EQ(tent(two), Q(0));
  const std::vector<Q> three{Q(3)};
  EXPECT_THROW(tent(three), DomainError);

  const auto flat = upper_envelope<Q>(segment(2), rationals({0, -1, 0}));
  EXPECT_EQ(flat.cells().size(), 1u);
  EXPECT_EQ(flat.integral(), Q(0));
  EXPECT_FALSE(flat.on_hull(1));

  const auto zero = upper_envelope<Q>(unit_triangle(), rationals({0, 0, 0}));
  EXPECT_EQ(zero.integral(), Q(0));
}

TEST(UpperEnvelope, FloatingTent) {
  const auto tent = upper_envelope<double>(segment(2), std::vector<double>{0.0, std::log(2.0), 0.0});
  EXPECT_NEAR(tent.integral(), std::log(2.0), 1e-15);
  const std::vector<double> x{0.5};
  EXPECT_NEAR(tent(x), 0.5 * std::log(2.0), 1e-15);
}

TEST(UpperEnvelope, RejectsWrongLength) {
  EXPECT_THROW(upper_envelope<Q>(segment(2), rationals({0, 1})), InvalidInput);
}

TEST(UpperEnvelope, CoplanarTiesGiveATriangulation) {
  // All four corners of the square on one plane: exactly one pair of cells must be chosen.
  LatticePointSet square(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto roof = upper_envelope<Q>(square, rationals({0, 1, 1, 2}));
  EXPECT_EQ(roof.cells().size(), 2u);
  EXPECT_EQ(roof.integral(), Q(1));
  const auto froof = upper_envelope<double>(square, std::vector<double>{0.0, 0.1, 0.1, 0.2});
  EXPECT_EQ(froof.cells().size(), 2u);
  EXPECT_NEAR(froof.integral(), 0.1, 1e-15);
}

class RandomRoofs : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RandomRoofs, ExactInvariants) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(100 + n);
  std::uniform_int_distribution<long> value(-6, 6);
  for (int trial = 0; trial < 15; ++trial) {
    const LatticePointSet points(n, testing::random_configuration(rng, n, n + 1 + trial % 4, 3));
    std::vector<Q> c;
    for (std::size_t j = 0; j < points.size(); ++j) c.emplace_back(value(rng), 1 + trial % 3);
    const auto roof = upper_envelope<Q>(points, c);
    const Q volume = points.configuration()->volume();

    Q covered = 0;
    for (const auto& cell : roof.cells()) covered += points.configuration()->simplices()[cell.simplex].volume;
    EXPECT_EQ(covered, volume);

    // Concavity and domination: each cell function lies above every lifted point.
    for (const auto& cell : roof.cells()) {
      for (std::size_t j = 0; j < points.size(); ++j) {
        std::vector<Q> m(points.points()[j].begin(), points.points()[j].end());
        EXPECT_GE(cell.function(m), c[j]);
      }
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
      std::vector<Q> m(points.points()[j].begin(), points.points()[j].end());
      EXPECT_GE(roof(m), c[j]);
      EXPECT_EQ(roof(m) == c[j], roof.on_hull(j));
    }

    // Positive homogeneity and vertical shift, exactly.
    const Q lambda(7, 3), shift(-5, 2);
    std::vector<Q> scaled, shifted;
    for (const auto& x : c) {
      scaled.push_back(lambda * x);
      shifted.push_back(x + shift);
    }
    EXPECT_EQ(upper_envelope<Q>(points, scaled).integral(), lambda * roof.integral());
    EXPECT_EQ(upper_envelope<Q>(points, shifted).integral(), roof.integral() + shift * volume);

    // The floating envelope agrees with the exact one.
    std::vector<double> cd;
    for (const auto& x : c) cd.push_back(x.get_d());
    EXPECT_NEAR(upper_envelope<double>(points, cd).integral(), roof.integral().get_d(), 1e-9);
  }
}

TEST_P(RandomRoofs, Biconjugation) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(200 + n);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const LatticePointSet points(n, testing::random_configuration(rng, n, n + 2 + trial % 3, 3));
    std::vector<double> c;
    for (std::size_t j = 0; j < points.size(); ++j) c.push_back(value(rng));
    const auto roof = upper_envelope<double>(points, c);
    const auto psi = legendre_fenchel_dual(roof);
    // Sample points of the polytope as convex combinations of the m_j.
    std::gamma_distribution<double> weight(1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> x(n, 0.0);
      double total = 0.0;
      std::vector<double> w(points.size());
      for (auto& wi : w) total += (wi = weight(rng));
      for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) x[i] += w[j] / total * static_cast<double>(points.points()[j][i]);
      }
      EXPECT_NEAR(psi.conjugate(x), roof(x), 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, RandomRoofs, ::testing::Values(1, 2, 3));

TEST(LegendreFenchel, Examples) {
  const auto zero = upper_envelope<Q>(segment(1), rationals({0, 0}));
  const auto psi = legendre_fenchel_dual(zero);
  for (long u : {-3, -1, 0, 2}) {
    const std::vector<Q> uu{Q(u)};
    EXPECT_EQ(psi(uu), Q(std::min(0L, u)));
  }
  const auto tent = upper_envelope<Q>(segment(2), rationals({0, 1, 0}));
  const std::vector<Q> origin{Q(0)};
  EXPECT_EQ(legendre_fenchel_dual(tent)(origin), Q(-1));

  const auto tri = legendre_fenchel_dual(upper_envelope<Q>(unit_triangle(), rationals({0, 0, 0})));
  const std::vector<Q> u{Q(3), Q(-2)};
  EXPECT_EQ(tri(u), Q(-2));
  EXPECT_EQ(tri.pieces().size(), 3u);
}

TEST(LegendreFenchel, DropsRedundantPieces) {
  // The middle point lies on the segment between its neighbours: the dual needs only the endpoints.
  const auto roof = upper_envelope<Q>(segment(2), rationals({0, 1, 2}));
  EXPECT_EQ(legendre_fenchel_dual(roof).pieces().size(), 2u);
}

TEST(BruteForce, Examples) {
  const std::vector<LatticePoint> pts{{0}, {1}, {2}};
  const auto tent = integrate_envelope_bruteforce(1, pts, std::vector<double>{0, 1, 0}, 10000);
  EXPECT_NEAR(tent.value, 1.0, 1e-3);
  const auto zero = integrate_envelope_bruteforce(1, pts, std::vector<double>{0, 0, 0}, 100);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_THROW(integrate_envelope_bruteforce(1, pts, std::vector<double>{0, 0, 0}, 1), InvalidInput);
}

TEST(BruteForce, RandomPlanarInstance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  const auto pts = testing::random_configuration(rng, 2, 6, 3);
  std::vector<double> c;
  for (std::size_t j = 0; j < pts.size(); ++j) c.push_back(value(rng));
  const auto exact = upper_envelope<double>(LatticePointSet(2, pts), c).integral();
  const auto brute = integrate_envelope_bruteforce(2, pts, c, 1000);
  EXPECT_NEAR(brute.value, exact, 5e-3);
  EXPECT_LE(std::abs(brute.value - exact), brute.error_bound + 1e-9);
}

TEST(Quadrature, WeightsIntegratePiecewiseLinearExactly) {
  for (std::size_t n : {1u, 2u, 3u}) {
    std::mt19937_64 rng(n);
    PointConfiguration domain(n, testing::random_configuration(rng, n, n + 3, 3));
    for (std::int64_t r : {1, 2, 5}) {
      const auto nodes = barycentric_grid_quadrature(domain, r);
      Q total = 0;
      for (const auto& node : nodes) total += node.weight;
      EXPECT_EQ(total, domain.volume());
      // An affine function is integrated exactly: compare with the exact roof of affine data.
      std::vector<Q> c;
      for (const auto& m : domain.points()) {
        Q v = 1;
        for (std::size_t i = 0; i < n; ++i) v += Q(static_cast<long>(i + 2)) * Q(m[i]);
        c.push_back(v);
      }
      const auto roof = upper_envelope<Q>(std::make_shared<const PointConfiguration>(domain), c);
      Q q = 0;
      for (const auto& node : nodes) q += node.weight * roof(node.point);
      EXPECT_EQ(q, roof.integral());
    }
    EXPECT_GT(barycentric_grid_mesh_size(domain, 4), 0.0);
    EXPECT_NEAR(barycentric_grid_mesh_size(domain, 8) * 2, barycentric_grid_mesh_size(domain, 4), 1e-12);
  }
}

TEST(Quadrature, ConcaveRoofIsUnderestimated) {
  const auto tent = upper_envelope<Q>(segment(2), rationals({0, 1, 0}));
  const auto& domain = tent.domain();
  Q q = 0;
  for (const auto& node : barycentric_grid_quadrature(domain, 3)) q += node.weight * tent(node.point);
  EXPECT_LE(q, tent.integral());
  EXPECT_LE(Q(tent.integral() - q).get_d(),
            domain.volume().get_d() * barycentric_grid_mesh_size(domain, 3) * tent.max_gradient_norm() + 1e-15);
}

}  // namespace
}  // namespace toricheight
