// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "detail/envelope.hpp"
#include "detail/linear_algebra.hpp"
#include "toricheight/errors.hpp"
#include "toricheight/roof.hpp"

namespace toricheight {

namespace detail {

std::optional<RationalInverse> invert(std::vector<Rational> a, std::size_t n) {
  std::vector<Rational> inv(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot * n + col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[pivot * n + k], a[col * n + k]);
        std::swap(inv[pivot * n + k], inv[col * n + k]);
      }
      det = -det;
    }
    const Rational p = a[col * n + col];
    det *= p;
    for (std::size_t k = 0; k < n; ++k) {
      a[col * n + k] /= p;
      inv[col * n + k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r * n + col]) == 0) continue;
      const Rational f = a[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return RationalInverse{det, std::move(inv)};
}

}  // namespace detail

namespace {

Rational factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return Rational(f);
}

}  // namespace

PointConfiguration::PointConfiguration(std::size_t dimension, std::vector<LatticePoint> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (points_.empty()) throw DomainError("empty point configuration");
  for (const auto& p : points_) {
    if (p.size() != dimension_) {
      throw DomainError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(dimension_));
    }
  }
  const std::size_t n1 = dimension_ + 1;
  const Rational inv_factorial = 1 / factorial(dimension_);

  detail::for_each_subset(points_.size(), n1, [&](std::span<const std::size_t> subset) {
    // Columns (1, m_j) for j in the subset.
    std::vector<Rational> a(n1 * n1);
    for (std::size_t t = 0; t < n1; ++t) {
      a[0 * n1 + t] = 1;
      for (std::size_t i = 0; i < dimension_; ++i) a[(i + 1) * n1 + t] = Rational(points_[subset[t]][i]);
    }
    auto inv = detail::invert(std::move(a), n1);
    if (!inv) return;
    Simplex s;
    s.vertices.assign(subset.begin(), subset.end());
    s.volume = abs(inv->determinant) * inv_factorial;
    s.volume_value = s.volume.get_d();
    s.inverse = std::move(inv->inverse);
    s.inverse_value.resize(s.inverse.size());
    std::transform(s.inverse.begin(), s.inverse.end(), s.inverse_value.begin(), [](const Rational& q) { return q.get_d(); });
    s.barycentric_exact.resize(points_.size() * n1);
    s.barycentric.resize(points_.size() * n1);
    s.barycentric_sign.resize(points_.size() * n1);
    for (std::size_t k = 0; k < points_.size(); ++k) {
      for (std::size_t t = 0; t < n1; ++t) {
        Rational lambda = s.inverse[t * n1];
        for (std::size_t i = 0; i < dimension_; ++i) lambda += s.inverse[t * n1 + i + 1] * points_[k][i];
        s.barycentric[k * n1 + t] = lambda.get_d();
        s.barycentric_sign[k * n1 + t] = static_cast<signed char>(sgn(lambda));
        s.barycentric_exact[k * n1 + t] = std::move(lambda);
      }
    }
    simplices_.push_back(std::move(s));
  });
  if (simplices_.empty()) {
    throw DomainError("points span a polytope of dimension less than " + std::to_string(dimension_));
  }

  // With all heights equal every comparison is a tie, so the lexicographic
  // perturbation alone decides: this is the pulling triangulation.
  triangulation_ = detail::upper_simplices(*this, [](std::size_t, std::size_t) { return 0; });
  volume_ = 0;
  for (auto s : triangulation_) volume_ += simplices_[s].volume;
}

bool generates_integer_lattice(std::size_t dimension, std::span<const LatticePoint> points) {
  if (dimension == 0) return true;
  std::vector<std::vector<Integer>> rows;
  for (std::size_t j = 1; j < points.size(); ++j) {
    std::vector<Integer> row(dimension);
    for (std::size_t i = 0; i < dimension; ++i) row[i] = Integer(points[j][i]) - Integer(points[0][i]);
    rows.push_back(std::move(row));
  }
  // Integer row echelon form; the lattice has index prod |pivot| when of full rank.
  std::size_t rank = 0;
  Integer index = 1;
  for (std::size_t col = 0; col < dimension && rank < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = rank; r < rows.size(); ++r) {
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[rank], rows[best]);
      bool reduced = true;
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[rank][col].get_mpz_t());
        for (std::size_t i = col; i < dimension; ++i) rows[r][i] -= q * rows[rank][i];
        if (rows[r][col] != 0) reduced = false;
      }
      if (reduced) {
        index *= abs(rows[rank][col]);
        ++rank;
        break;
      }
    }
    if (rank < col + 1) return false;
  }
  return rank == dimension && index == 1;
}

LatticePointSet::LatticePointSet(std::size_t dimension, std::vector<LatticePoint> points) {
  if (points.empty()) throw InvalidInput("exponent set is empty");
  for (const auto& p : points) {
    if (p.size() != dimension) throw InvalidInput("exponent vector of wrong length");
  }
  if (std::any_of(points.front().begin(), points.front().end(), [](std::int64_t x) { return x != 0; })) {
    throw InvalidInput("the first exponent vector m_0 must be 0");
  }
  if (!generates_integer_lattice(dimension, points)) {
    throw InvalidInput("exponent differences do not generate Z^" + std::to_string(dimension));
  }
  configuration_ = std::make_shared<const PointConfiguration>(dimension, std::move(points));
}

}  // namespace toricheight
