// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "toricheight/factored.hpp"
#include "toricheight/height.hpp"
#include "toricheight/polynomial.hpp"
#include "toricheight/roof.hpp"

namespace toricheight::testing {

/// Univariate polynomial from ascending coefficients.
inline IntPolynomial univariate(std::initializer_list<long> ascending) {
  IntPolynomial::TermMap terms;
  std::uint32_t k = 0;
  for (long c : ascending) {
    if (c != 0) terms[{k}] = Integer(c);
    ++k;
  }
  return IntPolynomial(1, std::move(terms));
}

inline IntPolynomial univariate(const std::vector<long>& ascending) {
  IntPolynomial::TermMap terms;
  for (std::uint32_t k = 0; k < ascending.size(); ++k) {
    if (ascending[k] != 0) terms[{k}] = Integer(ascending[k]);
  }
  return IntPolynomial(1, std::move(terms));
}

inline IntPolynomial terms(std::size_t vars, std::initializer_list<std::pair<Exponents, long>> list) {
  IntPolynomial::TermMap map;
  for (const auto& [e, c] : list) map[e] = Integer(c);
  return IntPolynomial(vars, std::move(map));
}

inline FactoredElement fe(const IntPolynomial& p, int exponent = 1) { return FactoredElement::from_polynomial(p, exponent); }
inline FactoredElement fe(long n) { return FactoredElement::integer(Integer(n)); }

inline std::vector<std::complex<double>> complex_coefficients(const std::vector<long>& ascending) {
  return {ascending.begin(), ascending.end()};
}

inline SamplerConfig sampler(std::int64_t samples, std::uint64_t seed = 1, std::int64_t batches = 20) {
  SamplerConfig c;
  c.samples = samples;
  c.seed = seed;
  c.batches = batches;
  return c;
}

inline LatticePointSet line_points(std::size_t r) {
  std::vector<LatticePoint> pts;
  for (std::size_t i = 0; i <= r; ++i) pts.push_back({static_cast<std::int64_t>(i)});
  return LatticePointSet(1, std::move(pts));
}

/// Random univariate polynomial of exact degree `degree` with coefficients in [-bound, bound].
inline std::vector<long> random_coefficients(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<long> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = dist(rng);
  while (c.back() == 0) c.back() = dist(rng);
  return c;
}

/// Random points in [0, extent]^n with m_0 = 0 that generate Z^n and span a full-dimensional hull.
inline std::vector<LatticePoint> random_configuration(std::mt19937_64& rng, std::size_t n, std::size_t count,
                                                      std::int64_t extent) {
  std::uniform_int_distribution<std::int64_t> dist(0, extent);
  while (true) {
    std::vector<LatticePoint> pts{LatticePoint(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
      LatticePoint e(n, 0);
      e[i] = 1;
      pts.push_back(e);
    }
    while (pts.size() < count) {
      LatticePoint p(n);
      for (auto& x : p) x = dist(rng);
      pts.push_back(p);
    }
    std::shuffle(pts.begin() + 1, pts.end(), rng);
    try {
      LatticePointSet check(n, pts);
      return pts;
    } catch (const std::exception&) {
    }
  }
}

}  // namespace toricheight::testing
