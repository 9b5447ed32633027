// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace toricheight {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent vector of a monomial; its length is the owning polynomial's variable count.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic with z1 most significant.
struct GradedLexLess {
  bool operator()(const Exponents& lhs, const Exponents& rhs) const;
};

/// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in graded-lex order with no zero coefficient stored, so two
/// polynomials are equal exactly when their term maps are.
class IntPolynomial {
 public:
  using TermMap = std::map<Exponents, Integer, GradedLexLess>;

  explicit IntPolynomial(std::size_t variable_count = 0);
  IntPolynomial(std::size_t variable_count, TermMap terms);

  static IntPolynomial constant(std::size_t variable_count, const Integer& value);
  static IntPolynomial variable(std::size_t variable_count, std::size_t index);

  std::size_t variable_count() const noexcept { return variable_count_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t variable) const;
  /// Variables that occur with positive degree, in increasing order.
  std::vector<std::size_t> support() const;

  Integer coefficient(const Exponents& monomial) const;
  /// Leading coefficient under graded-lex order. Throws InvalidInput on the zero polynomial.
  const Integer& leading_coefficient() const;
  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  Integer content() const;

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const IntPolynomial& other);
  IntPolynomial& operator*=(const Integer& scalar);

  friend IntPolynomial operator+(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs += rhs; }
  friend IntPolynomial operator-(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs -= rhs; }
  friend IntPolynomial operator*(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs *= rhs; }
  friend IntPolynomial operator*(IntPolynomial lhs, const Integer& rhs) { return lhs *= rhs; }

  friend bool operator==(const IntPolynomial& lhs, const IntPolynomial& rhs);
  /// Arbitrary but total order, used for map keys.
  friend bool operator<(const IntPolynomial& lhs, const IntPolynomial& rhs);

  IntPolynomial pow(unsigned exponent) const;
  /// Divides every coefficient by `divisor`, which must divide them all.
  IntPolynomial exact_quotient(const Integer& divisor) const;
  /// Same polynomial viewed in (t, z1, ..., zb): a new variable in front.
  IntPolynomial with_leading_variable() const;

  /// Value at a complex point (Horner in z1, coefficients expanded in the others).
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;
  /// Coefficients, by ascending degree in `variable`, after substituting the other
  /// coordinates of `point`. The entry point[variable] is ignored.
  std::vector<std::complex<double>> specialize(std::size_t variable,
                                               std::span<const std::complex<double>> point) const;

  /// Human-readable form such as "2*z1^2 - 3". Names default to z1..zb.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void check_arity(const IntPolynomial& other) const;

  std::size_t variable_count_ = 0;
  TermMap terms_;
};

/// poly = unit * content * primitive, with primitive of content 1 and positive leading coefficient.
struct Normalization {
  int unit = 1;
  Integer content;
  IntPolynomial primitive;
};

Normalization normalize(const IntPolynomial& poly);

/// alpha * t - beta in the variables (t, z1, ..., zb).
IntPolynomial build_p_gamma(const IntPolynomial& alpha, const IntPolynomial& beta);

/// Horner evaluation of a dense univariate polynomial given by ascending coefficients.
std::complex<double> horner(std::span<const std::complex<double>> coefficients, std::complex<double> x);

std::vector<std::string> default_variable_names(std::size_t count);

}  // namespace toricheight

namespace toricheight {

/// Throws DomainError when the point length differs from the variable count.
inline std::complex<double> eval_complex(const IntPolynomial& poly,
                                         std::span<const std::complex<double>> point) {
  return poly.evaluate(point);
}

}  // namespace toricheight
