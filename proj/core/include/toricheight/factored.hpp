// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "toricheight/polynomial.hpp"

namespace toricheight {

/// Canonical key of a finite place: a prime integer, or a primitive polynomial of
/// positive degree with positive graded-lex leading coefficient.
///
/// Irreducibility is trusted, not checked.
class NormalizedIrreducible {
 public:
  static NormalizedIrreducible prime(const Integer& p);
  static NormalizedIrreducible polynomial(IntPolynomial primitive);

  bool is_prime() const noexcept { return std::holds_alternative<Integer>(value_); }
  const Integer& prime_value() const;
  const IntPolynomial& poly() const;
  /// Variable count of a polynomial place; nullopt for a prime.
  std::optional<std::size_t> variable_count() const;

  std::string to_string() const;

  friend bool operator==(const NormalizedIrreducible& lhs, const NormalizedIrreducible& rhs);
  friend bool operator<(const NormalizedIrreducible& lhs, const NormalizedIrreducible& rhs);

 private:
  explicit NormalizedIrreducible(std::variant<Integer, IntPolynomial> value) : value_(std::move(value)) {}
  std::variant<Integer, IntPolynomial> value_;
};

/// Prime factorization of |n| > 1 by trial division, as (prime, multiplicity) pairs.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// An element of Q(z1,...,zb)^x as sign * prod q_i^{e_i} over normalized irreducibles.
class FactoredElement {
 public:
  using FactorMap = std::map<NormalizedIrreducible, int>;

  FactoredElement() = default;
  FactoredElement(int sign, FactorMap factors);

  static FactoredElement one() { return {}; }
  static FactoredElement integer(const Integer& n);
  /// Normalizes `poly` (unit into the sign, integer content into prime factors) and raises to `exponent`.
  static FactoredElement from_polynomial(const IntPolynomial& poly, int exponent = 1);
  static FactoredElement prime_power(const Integer& p, int exponent);

  int sign() const noexcept { return sign_; }
  const FactorMap& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return sign_ == 1 && factors_.empty(); }

  /// Common variable count of the polynomial factors; nullopt if there are none.
  std::optional<std::size_t> variable_count() const;

  FactoredElement operator*(const FactoredElement& other) const;
  FactoredElement inverse() const;
  FactoredElement pow(int exponent) const;

  /// Expanded (alpha, beta) with self = alpha / beta, sign carried by alpha, over `variables` variables.
  std::pair<IntPolynomial, IntPolynomial> numerator_denominator(std::size_t variables) const;

  std::string to_string() const;

  friend bool operator==(const FactoredElement&, const FactoredElement&) = default;

 private:
  int sign_ = 1;
  FactorMap factors_;
};

/// Valuation of gamma at the place v (0 when v does not occur).
int ord_at(const FactoredElement& gamma, const NormalizedIrreducible& v);

}  // namespace toricheight
