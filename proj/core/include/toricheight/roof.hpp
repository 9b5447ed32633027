// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "toricheight/polynomial.hpp"

namespace toricheight {

using LatticePoint = std::vector<std::int64_t>;

/// A full-dimensional finite point configuration in Z^n together with every
/// affinely independent (n+1)-subset and the barycentric coordinates of all
/// points with respect to it. Shared, immutable, and reused across envelopes.
class PointConfiguration {
 public:
  struct Simplex {
    std::vector<std::size_t> vertices;   // n+1 point indices, increasing
    Rational volume;                     // Lebesgue volume
    double volume_value = 0.0;
    std::vector<Rational> inverse;       // (n+1)^2 row-major: lambda(x) = inverse * (1, x)
    std::vector<double> inverse_value;
    std::vector<Rational> barycentric_exact;  // size() rows of n+1 coordinates
    std::vector<double> barycentric;
    std::vector<signed char> barycentric_sign;
  };

  /// Throws DomainError when conv(points) has dimension < n.
  PointConfiguration(std::size_t dimension, std::vector<LatticePoint> points);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return points_.size(); }
  const LatticePoint& point(std::size_t j) const { return points_.at(j); }
  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }

  /// vol(conv(points)), Lebesgue measure with Z^n of covolume 1.
  const Rational& volume() const noexcept { return volume_; }
  /// Simplex indices of the lexicographic pulling triangulation of conv(points).
  const std::vector<std::size_t>& pulling_triangulation() const noexcept { return triangulation_; }

 private:
  std::size_t dimension_;
  std::vector<LatticePoint> points_;
  std::vector<Simplex> simplices_;
  std::vector<std::size_t> triangulation_;
  Rational volume_;
};

/// Exponent vectors m_0 = 0, m_1, ..., m_r whose differences generate Z^n and
/// whose convex hull is n-dimensional.
class LatticePointSet {
 public:
  LatticePointSet(std::size_t dimension, std::vector<LatticePoint> points);

  std::size_t dimension() const noexcept { return configuration_->dimension(); }
  std::size_t size() const noexcept { return configuration_->size(); }
  const std::vector<LatticePoint>& points() const noexcept { return configuration_->points(); }
  const std::shared_ptr<const PointConfiguration>& configuration() const noexcept { return configuration_; }

 private:
  std::shared_ptr<const PointConfiguration> configuration_;
};

/// True when the differences points[j] - points[0] generate Z^n as an abelian group.
bool generates_integer_lattice(std::size_t dimension, std::span<const LatticePoint> points);

template <class T>
struct AffineFunction {
  std::vector<T> gradient;
  T offset{};

  T operator()(std::span<const T> x) const;
};

/// Concave piecewise-linear function on conv(m_j) parameterizing the upper envelope
/// of the lifted points (m_j, c_j). Cells are the simplices of a triangulation.
///
/// T is Rational (exact predicates) or double (predicates with relative tolerance 1e-9).
template <class T>
class RoofFunction {
 public:
  struct Cell {
    std::size_t simplex;  // index into domain().simplices()
    AffineFunction<T> function;
  };

  const PointConfiguration& domain() const noexcept { return *domain_; }
  const std::shared_ptr<const PointConfiguration>& domain_ptr() const noexcept { return domain_; }
  std::span<const T> values() const noexcept { return values_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  /// Integral over the polytope: sum of cell volume times the mean of the vertex values.
  T integral() const;
  /// Value at x; DomainError when x lies outside the polytope.
  T operator()(std::span<const T> x) const;
  /// Minimum of the cell functions; equals the roof on the polytope, no domain check.
  T min_of_pieces(std::span<const T> x) const;
  /// Whether (m_j, c_j) lies on the upper hull (within the tolerance for doubles).
  bool on_hull(std::size_t j) const;
  /// Largest Euclidean norm of a cell gradient.
  double max_gradient_norm() const;

 private:
  template <class U>
  friend RoofFunction<U> upper_envelope(std::shared_ptr<const PointConfiguration>, std::vector<U>);

  std::shared_ptr<const PointConfiguration> domain_;
  std::vector<T> values_;
  std::vector<Cell> cells_;
};

/// Upper hull of the lifted points, triangulated by lexicographic pulling in point order.
template <class T>
RoofFunction<T> upper_envelope(std::shared_ptr<const PointConfiguration> domain, std::vector<T> values);

template <class T>
RoofFunction<T> upper_envelope(const LatticePointSet& points, std::vector<T> values) {
  return upper_envelope<T>(points.configuration(), std::move(values));
}

template <class T>
T integrate_roof(const RoofFunction<T>& roof) {
  return roof.integral();
}

template <class T>
T roof_eval(const RoofFunction<T>& roof, std::span<const T> x) {
  return roof(x);
}

/// psi(u) = min_j (<m_j, u> - c_j): a concave function on R^n as a minimum of affine pieces.
template <class T>
class PWLConcave {
 public:
  struct Piece {
    LatticePoint slope;
    T offset{};
  };

  PWLConcave(std::size_t dimension, std::vector<Piece> pieces);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  T operator()(std::span<const T> u) const;
  /// inf_u (<x, u> - psi(u)) by enumeration of the vertices of the dual arrangement.
  /// Requires x in conv(slopes); the result is then finite.
  T conjugate(std::span<const T> x) const;

 private:
  std::size_t dimension_;
  std::vector<Piece> pieces_;
};

/// Legendre-Fenchel dual of a roof: one piece per vertex of the upper hull.
template <class T>
PWLConcave<T> legendre_fenchel_dual(const RoofFunction<T>& roof);

/// Riemann-sum oracle for the envelope integral, independent of the hull code.
///
/// The bounding box is cut into resolution^n cells; the envelope at each midpoint
/// is the maximum over all simplices of lifted points that contain it. Cells that
/// meet no hyperplane spanned by n of the points lie in one linear piece and are
/// integrated exactly; every other cell adds 2 max|c_j| vol(cell) to error_bound.
struct BruteForceIntegral {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t cells = 0;
  std::int64_t straddling_cells = 0;
};

BruteForceIntegral integrate_envelope_bruteforce(std::size_t dimension, std::span<const LatticePoint> points,
                                                 std::span<const double> values, std::int64_t resolution);

/// Quadrature node for integrals over the polytope.
struct QuadratureNode {
  std::vector<Rational> point;
  Rational weight;
};

/// Uniform barycentric grid on each simplex of the pulling triangulation: every
/// simplex is cut into resolution^n congruent pieces and the weights integrate
/// the piecewise-linear interpolant of the nodal values exactly.
std::vector<QuadratureNode> barycentric_grid_quadrature(const PointConfiguration& domain, std::int64_t resolution);

/// Largest edge length of the pieces of that grid.
double barycentric_grid_mesh_size(const PointConfiguration& domain, std::int64_t resolution);

}  // namespace toricheight
