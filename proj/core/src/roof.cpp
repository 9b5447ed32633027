// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/roof.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>

#include "detail/envelope.hpp"
#include "detail/linear_algebra.hpp"
#include "toricheight/errors.hpp"

namespace toricheight {

namespace {

constexpr double kRelativeTolerance = 1e-9;
constexpr double kBarycentricSlack = 1e-12;

double to_double(const Rational& x) { return x.get_d(); }
double to_double(double x) { return x; }

template <class T>
T from_integer(std::int64_t v) {
  return T(static_cast<double>(v));
}
template <>
Rational from_integer<Rational>(std::int64_t v) {
  return Rational(Integer(static_cast<long>(v)));
}

template <class T>
std::vector<T> as_point(const LatticePoint& m) {
  std::vector<T> x(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) x[i] = from_integer<T>(m[i]);
  return x;
}

double value_scale(std::span<const double> values) {
  double s = 1.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

// Sign of a - b: exact for rationals, within `tol` counted as a tie for doubles.
int compare_values(const Rational& a, const Rational& b, double) {
  const int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}
int compare_values(double a, double b, double tol) {
  const double d = a - b;
  if (std::abs(d) <= tol) return 0;
  return d < 0 ? -1 : 1;
}

template <class T>
AffineFunction<T> cell_function(const PointConfiguration::Simplex& simplex, std::span<const T> values, std::size_t dim) {
  const std::size_t n1 = dim + 1;
  AffineFunction<T> f;
  f.gradient.assign(dim, T(0));
  f.offset = T(0);
  for (std::size_t t = 0; t < n1; ++t) {
    const T& c = values[simplex.vertices[t]];
    if constexpr (std::is_same_v<T, Rational>) {
      f.offset += c * simplex.inverse[t * n1];
      for (std::size_t i = 0; i < dim; ++i) f.gradient[i] += c * simplex.inverse[t * n1 + i + 1];
    } else {
      f.offset += c * simplex.inverse_value[t * n1];
      for (std::size_t i = 0; i < dim; ++i) f.gradient[i] += c * simplex.inverse_value[t * n1 + i + 1];
    }
  }
  return f;
}

// Interpolant of the simplex at point k.
template <class T>
T interpolate_at_point(const PointConfiguration::Simplex& simplex, std::span<const T> values, std::size_t k,
                       std::size_t n1) {
  T acc = T(0);
  for (std::size_t t = 0; t < n1; ++t) {
    if constexpr (std::is_same_v<T, Rational>) {
      if (simplex.barycentric_sign[k * n1 + t] != 0) acc += simplex.barycentric_exact[k * n1 + t] * values[simplex.vertices[t]];
    } else {
      acc += simplex.barycentric[k * n1 + t] * values[simplex.vertices[t]];
    }
  }
  return acc;
}

template <class T>
std::vector<T> barycentric_of(const PointConfiguration::Simplex& simplex, std::span<const T> x) {
  const std::size_t n1 = x.size() + 1;
  std::vector<T> lambda(n1, T(0));
  for (std::size_t t = 0; t < n1; ++t) {
    if constexpr (std::is_same_v<T, Rational>) {
      lambda[t] = simplex.inverse[t * n1];
      for (std::size_t i = 0; i < x.size(); ++i) lambda[t] += simplex.inverse[t * n1 + i + 1] * x[i];
    } else {
      lambda[t] = simplex.inverse_value[t * n1];
      for (std::size_t i = 0; i < x.size(); ++i) lambda[t] += simplex.inverse_value[t * n1 + i + 1] * x[i];
    }
  }
  return lambda;
}

}  // namespace

template <class T>
T AffineFunction<T>::operator()(std::span<const T> x) const {
  T acc = offset;
  for (std::size_t i = 0; i < gradient.size(); ++i) acc += gradient[i] * x[i];
  return acc;
}

template <class T>
RoofFunction<T> upper_envelope(std::shared_ptr<const PointConfiguration> domain, std::vector<T> values) {
  if (!domain) throw InvalidInput("null point configuration");
  if (values.size() != domain->size()) {
    throw InvalidInput("got " + std::to_string(values.size()) + " heights for " + std::to_string(domain->size()) +
                       " points");
  }
  const std::size_t n1 = domain->dimension() + 1;
  const auto& simplices = domain->simplices();
  const std::span<const T> vals(values);

  std::vector<std::size_t> accepted;
  if constexpr (std::is_same_v<T, Rational>) {
    accepted = detail::upper_simplices(*domain, [&](std::size_t s, std::size_t k) {
      return compare_values(vals[k], interpolate_at_point<T>(simplices[s], vals, k, n1), 0.0);
    });
  } else {
    for (double v : values) {
      if (!std::isfinite(v)) throw InvalidInput("heights must be finite");
    }
    const double base = kRelativeTolerance * value_scale(vals);
    bool consistent = false;
    // A tolerance-based tie pattern can be unrealizable; widen it until the cells tile the polytope.
    for (double widen : {1.0, 1e2, 1e4}) {
      const double tol = base * widen;
      accepted = detail::upper_simplices(*domain, [&](std::size_t s, std::size_t k) {
        return compare_values(vals[k], interpolate_at_point<T>(simplices[s], vals, k, n1), tol);
      });
      Rational covered = 0;
      for (auto s : accepted) covered += simplices[s].volume;
      if (covered == domain->volume()) {
        consistent = true;
        break;
      }
    }
    if (!consistent) throw NumericalFailure("upper envelope cells do not tile the polytope");
  }

  RoofFunction<T> roof;
  roof.domain_ = std::move(domain);
  roof.values_ = std::move(values);
  roof.cells_.reserve(accepted.size());
  for (auto s : accepted) {
    roof.cells_.push_back({s, cell_function<T>(simplices[s], roof.values_, roof.domain_->dimension())});
  }
  return roof;
}

template <class T>
T RoofFunction<T>::integral() const {
  const std::size_t n1 = domain_->dimension() + 1;
  T total = T(0);
  for (const auto& cell : cells_) {
    const auto& simplex = domain_->simplices()[cell.simplex];
    T sum = T(0);
    for (auto v : simplex.vertices) sum += values_[v];
    if constexpr (std::is_same_v<T, Rational>) {
      total += simplex.volume * sum / Rational(static_cast<long>(n1));
    } else {
      total += simplex.volume_value * sum / static_cast<double>(n1);
    }
  }
  return total;
}

template <class T>
T RoofFunction<T>::operator()(std::span<const T> x) const {
  if (x.size() != domain_->dimension()) throw DomainError("point has wrong dimension");
  double slack = 0.0;
  if constexpr (std::is_same_v<T, double>) {
    double norm = 1.0;
    for (double xi : x) norm = std::max(norm, std::abs(xi));
    slack = kBarycentricSlack * norm;
  }
  for (const auto& cell : cells_) {
    const auto lambda = barycentric_of<T>(domain_->simplices()[cell.simplex], x);
    bool inside = true;
    for (const T& l : lambda) {
      if constexpr (std::is_same_v<T, Rational>) {
        inside = inside && sgn(l) >= 0;
      } else {
        inside = inside && l >= -slack;
      }
    }
    if (inside) return cell.function(x);
  }
  throw DomainError("point lies outside the polytope");
}

template <class T>
T RoofFunction<T>::min_of_pieces(std::span<const T> x) const {
  T best = cells_.front().function(x);
  for (std::size_t c = 1; c < cells_.size(); ++c) {
    T v = cells_[c].function(x);
    if (v < best) best = v;
  }
  return best;
}

template <class T>
bool RoofFunction<T>::on_hull(std::size_t j) const {
  const auto m = as_point<T>(domain_->point(j));
  const T roof_value = min_of_pieces(m);
  if constexpr (std::is_same_v<T, Rational>) {
    return roof_value == values_[j];
  } else {
    return std::abs(roof_value - values_[j]) <= kRelativeTolerance * value_scale(values_);
  }
}

template <class T>
double RoofFunction<T>::max_gradient_norm() const {
  double best = 0.0;
  for (const auto& cell : cells_) {
    double s = 0.0;
    for (const auto& g : cell.function.gradient) s += to_double(g) * to_double(g);
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

template <class T>
PWLConcave<T>::PWLConcave(std::size_t dimension, std::vector<Piece> pieces)
    : dimension_(dimension), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidInput("a piecewise-linear concave function needs at least one piece");
  for (const auto& p : pieces_) {
    if (p.slope.size() != dimension_) throw InvalidInput("piece slope has wrong dimension");
  }
}

template <class T>
T PWLConcave<T>::operator()(std::span<const T> u) const {
  std::optional<T> best;
  for (const auto& piece : pieces_) {
    T v = piece.offset;
    for (std::size_t i = 0; i < dimension_; ++i) v += from_integer<T>(piece.slope[i]) * u[i];
    if (!best || v < *best) best = v;
  }
  return *best;
}

template <class T>
T PWLConcave<T>::conjugate(std::span<const T> x) const {
  if (x.size() != dimension_) throw DomainError("point has wrong dimension");
  const std::size_t n1 = dimension_ + 1;
  // <x, u> - psi(u) = max_j (<x - m_j, u> - offset_j); its minimum sits where n+1 pieces meet.
  auto objective = [&](std::span<const T> u) {
    std::optional<T> best;
    for (const auto& piece : pieces_) {
      T v = -piece.offset;
      for (std::size_t i = 0; i < dimension_; ++i) v += (x[i] - from_integer<T>(piece.slope[i])) * u[i];
      if (!best || v > *best) best = v;
    }
    return *best;
  };
  std::optional<T> result;
  detail::for_each_subset(pieces_.size(), n1, [&](std::span<const std::size_t> subset) {
    std::vector<T> a(n1 * n1);
    std::vector<T> b(n1);
    for (std::size_t r = 0; r < n1; ++r) {
      const auto& piece = pieces_[subset[r]];
      for (std::size_t i = 0; i < dimension_; ++i) a[r * n1 + i] = x[i] - from_integer<T>(piece.slope[i]);
      a[r * n1 + dimension_] = T(-1);
      b[r] = piece.offset;
    }
    auto solution = detail::solve<T>(std::move(a), std::move(b), n1);
    if (!solution) return;
    const std::span<const T> u(solution->data(), dimension_);
    T v = objective(u);
    if (!result || v < *result) result = v;
  });
  if (!result) throw DomainError("conjugate has no finite vertex (point outside the domain?)");
  return *result;
}

template <class T>
PWLConcave<T> legendre_fenchel_dual(const RoofFunction<T>& roof) {
  const auto& domain = roof.domain();
  const std::size_t dim = domain.dimension();
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < domain.size(); ++j) {
    if (roof.on_hull(j)) kept.push_back(j);
  }
  // Drop (m_j, c_j) that are convex combinations of the other hull points.
  for (std::size_t pos = 0; pos < kept.size();) {
    const std::size_t j = kept[pos];
    std::vector<LatticePoint> rest_points;
    std::vector<T> rest_values;
    for (auto k : kept) {
      if (k == j) continue;
      rest_points.push_back(domain.point(k));
      rest_values.push_back(roof.values()[k]);
    }
    bool redundant = false;
    if (rest_points.size() >= dim + 1) {
      try {
        auto sub = std::make_shared<const PointConfiguration>(dim, std::move(rest_points));
        const auto rest_roof = upper_envelope<T>(sub, std::move(rest_values));
        const auto m = as_point<T>(domain.point(j));
        const T there = rest_roof(m);
        if constexpr (std::is_same_v<T, Rational>) {
          redundant = there >= roof.values()[j];
        } else {
          redundant = there >= roof.values()[j] - kRelativeTolerance * value_scale(roof.values());
        }
      } catch (const DomainError&) {
        redundant = false;
      }
    }
    if (redundant) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }
  std::vector<typename PWLConcave<T>::Piece> pieces;
  for (auto j : kept) pieces.push_back({domain.point(j), -roof.values()[j]});
  return PWLConcave<T>(dim, std::move(pieces));
}

std::vector<QuadratureNode> barycentric_grid_quadrature(const PointConfiguration& domain, std::int64_t resolution) {
  if (resolution < 1) throw InvalidInput("quadrature resolution must be at least 1");
  const std::size_t n = domain.dimension();
  std::vector<QuadratureNode> nodes;
  Integer pieces = 1;
  for (std::size_t i = 0; i < n; ++i) pieces *= static_cast<long>(resolution);
  const Rational per_incidence_base = Rational(1) / (Rational(pieces) * Rational(static_cast<long>(n + 1)));

  for (auto s : domain.pulling_triangulation()) {
    const auto& simplex = domain.simplices()[s];
    const Rational per_incidence = simplex.volume * per_incidence_base;
    std::map<std::vector<std::int64_t>, Rational> weights;
    if (n == 0) {
      weights[{}] = simplex.volume;
    } else {
      // Edgewise subdivision of {R >= t_1 >= ... >= t_n >= 0} into R^n Freudenthal simplices.
      std::vector<std::int64_t> k(n, 0);
      std::vector<std::size_t> order(n);
      auto visit_cube = [&] {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        do {
          bool valid = true;
          std::vector<std::size_t> position(n);
          for (std::size_t q = 0; q < n; ++q) position[order[q]] = q;
          for (std::size_t i = 0; i + 1 < n && valid; ++i) {
            if (k[i] == k[i + 1] && position[i] > position[i + 1]) valid = false;
          }
          if (!valid) continue;
          std::vector<std::int64_t> w = k;
          weights[w] += per_incidence;
          for (std::size_t q = 0; q < n; ++q) {
            ++w[order[q]];
            weights[w] += per_incidence;
          }
        } while (std::next_permutation(order.begin(), order.end()));
      };
      // Enumerate R > k_1 >= k_2 >= ... >= k_n >= 0.
      std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t upper) {
        if (i == n) {
          visit_cube();
          return;
        }
        for (std::int64_t v = 0; v <= upper; ++v) {
          k[i] = v;
          rec(i + 1, v);
        }
      };
      rec(0, resolution - 1);
    }
    for (auto& [w, weight] : weights) {
      QuadratureNode node;
      node.point.resize(n);
      for (std::size_t i = 0; i < n; ++i) node.point[i] = Rational(domain.point(simplex.vertices[0])[i]);
      for (std::size_t step = 0; step < n; ++step) {
        const Rational t(Integer(static_cast<long>(w[step])), Integer(static_cast<long>(resolution)));
        if (sgn(t) == 0) continue;
        const auto& from = domain.point(simplex.vertices[step]);
        const auto& to = domain.point(simplex.vertices[step + 1]);
        for (std::size_t i = 0; i < n; ++i) node.point[i] += t * Rational(to[i] - from[i]);
      }
      node.weight = weight;
      nodes.push_back(std::move(node));
    }
  }
  return nodes;
}

double barycentric_grid_mesh_size(const PointConfiguration& domain, std::int64_t resolution) {
  const std::size_t n = domain.dimension();
  double best = 0.0;
  for (auto s : domain.pulling_triangulation()) {
    const auto& v = domain.simplices()[s].vertices;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      double norm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t step = 0; step < n; ++step) {
          if (mask & (std::uint64_t{1} << step)) {
            d += static_cast<double>(domain.point(v[step + 1])[i] - domain.point(v[step])[i]);
          }
        }
        norm2 += d * d;
      }
      best = std::max(best, std::sqrt(norm2));
    }
  }
  return best / static_cast<double>(resolution);
}

template struct AffineFunction<Rational>;
template struct AffineFunction<double>;
template class RoofFunction<Rational>;
template class RoofFunction<double>;
template class PWLConcave<Rational>;
template class PWLConcave<double>;
template RoofFunction<Rational> upper_envelope<Rational>(std::shared_ptr<const PointConfiguration>, std::vector<Rational>);
template RoofFunction<double> upper_envelope<double>(std::shared_ptr<const PointConfiguration>, std::vector<double>);
template PWLConcave<Rational> legendre_fenchel_dual<Rational>(const RoofFunction<Rational>&);
template PWLConcave<double> legendre_fenchel_dual<double>(const RoofFunction<double>&);

}  // namespace toricheight
