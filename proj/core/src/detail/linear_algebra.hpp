// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "toricheight/polynomial.hpp"

namespace toricheight::detail {

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(double x) { return std::abs(x); }

/// Solves A x = b for a square row-major A by Gaussian elimination with partial
/// pivoting. Returns nullopt when A is singular (for doubles: pivot below
/// `pivot_tolerance` times the largest entry).
template <class T>
std::optional<std::vector<T>> solve(std::vector<T> a, std::vector<T> b, std::size_t n,
                                    double pivot_tolerance = 1e-12) {
  double scale = 0.0;
  for (const auto& x : a) scale = std::max(scale, magnitude(x));
  if (scale == 0.0) return std::nullopt;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (magnitude(a[r * n + col]) > magnitude(a[best * n + col])) best = r;
    }
    if (is_zero(a[best * n + col])) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(a[best * n + col]) < pivot_tolerance * scale) return std::nullopt;
    }
    if (best != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[best * n + k], a[col * n + k]);
      std::swap(b[best], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a[r * n + col])) continue;
      const T factor = a[r * n + col] / a[col * n + col];
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= factor * a[col * n + k];
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i * n + k] * x[k];
    x[i] = acc / a[i * n + i];
  }
  return x;
}

/// Exact determinant and inverse of a square rational matrix; nullopt when singular.
struct RationalInverse {
  Rational determinant;
  std::vector<Rational> inverse;
};

std::optional<RationalInverse> invert(std::vector<Rational> a, std::size_t n);

/// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace toricheight::detail
