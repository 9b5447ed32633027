// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "toricheight/errors.hpp"

namespace toricheight {

namespace {

std::uint64_t degree_of(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

// Powers z^0..z^max_degree of each coordinate.
std::vector<std::vector<std::complex<double>>> power_tables(const IntPolynomial& poly,
                                                            std::span<const std::complex<double>> point) {
  std::vector<std::vector<std::complex<double>>> tables(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const auto degree = poly.degree_in(i);
    auto& table = tables[i];
    table.resize(degree + 1);
    table[0] = 1.0;
    for (std::uint32_t k = 1; k <= degree; ++k) table[k] = table[k - 1] * point[i];
  }
  return tables;
}

}  // namespace

bool GradedLexLess::operator()(const Exponents& lhs, const Exponents& rhs) const {
  const auto dl = degree_of(lhs);
  const auto dr = degree_of(rhs);
  if (dl != dr) return dl < dr;
  return lhs < rhs;
}

IntPolynomial::IntPolynomial(std::size_t variable_count) : variable_count_(variable_count) {}

IntPolynomial::IntPolynomial(std::size_t variable_count, TermMap terms) : variable_count_(variable_count) {
  for (auto& [monomial, coefficient] : terms) {
    if (monomial.size() != variable_count_) {
      throw InvalidInput("monomial has " + std::to_string(monomial.size()) + " exponents, expected " +
                         std::to_string(variable_count_));
    }
    if (coefficient != 0) terms_.emplace(monomial, std::move(coefficient));
  }
}

IntPolynomial IntPolynomial::constant(std::size_t variable_count, const Integer& value) {
  IntPolynomial p(variable_count);
  if (value != 0) p.terms_.emplace(Exponents(variable_count, 0), value);
  return p;
}

IntPolynomial IntPolynomial::variable(std::size_t variable_count, std::size_t index) {
  if (index >= variable_count) throw InvalidInput("variable index out of range");
  IntPolynomial p(variable_count);
  Exponents e(variable_count, 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Integer(1));
  return p;
}

bool IntPolynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

std::uint32_t IntPolynomial::total_degree() const {
  if (terms_.empty()) return 0;
  return static_cast<std::uint32_t>(degree_of(terms_.rbegin()->first));
}

std::uint32_t IntPolynomial::degree_in(std::size_t variable) const {
  std::uint32_t d = 0;
  for (const auto& [monomial, coefficient] : terms_) d = std::max(d, monomial.at(variable));
  return d;
}

std::vector<std::size_t> IntPolynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < variable_count_; ++i) {
    if (degree_in(i) > 0) out.push_back(i);
  }
  return out;
}

Integer IntPolynomial::coefficient(const Exponents& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Integer(0) : it->second;
}

const Integer& IntPolynomial::leading_coefficient() const {
  if (terms_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
  return terms_.rbegin()->second;
}

Integer IntPolynomial::content() const {
  Integer g = 0;
  for (const auto& [monomial, coefficient] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coefficient.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void IntPolynomial::check_arity(const IntPolynomial& other) const {
  if (other.variable_count_ != variable_count_) {
    throw InvalidInput("polynomials over different variable counts (" + std::to_string(variable_count_) +
                       " vs " + std::to_string(other.variable_count_) + ")");
  }
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial out(*this);
  for (auto& [monomial, coefficient] : out.terms_) coefficient = -coefficient;
  return out;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  check_arity(other);
  for (const auto& [monomial, coefficient] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) { return *this += -other; }

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& other) {
  check_arity(other);
  TermMap product;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      Exponents m(variable_count_);
      for (std::size_t i = 0; i < variable_count_; ++i) m[i] = ma[i] + mb[i];
      product[m] += ca * cb;
    }
  }
  std::erase_if(product, [](const auto& term) { return term.second == 0; });
  terms_ = std::move(product);
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [monomial, coefficient] : terms_) coefficient *= scalar;
  return *this;
}

bool operator==(const IntPolynomial& lhs, const IntPolynomial& rhs) {
  return lhs.variable_count_ == rhs.variable_count_ && lhs.terms_ == rhs.terms_;
}

bool operator<(const IntPolynomial& lhs, const IntPolynomial& rhs) {
  if (lhs.variable_count_ != rhs.variable_count_) return lhs.variable_count_ < rhs.variable_count_;
  if (lhs.terms_.size() != rhs.terms_.size()) return lhs.terms_.size() < rhs.terms_.size();
  GradedLexLess less;
  for (auto a = lhs.terms_.rbegin(), b = rhs.terms_.rbegin(); a != lhs.terms_.rend(); ++a, ++b) {
    if (a->first != b->first) return less(a->first, b->first);
    if (a->second != b->second) return a->second < b->second;
  }
  return false;
}

IntPolynomial IntPolynomial::pow(unsigned exponent) const {
  IntPolynomial result = constant(variable_count_, 1);
  IntPolynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

IntPolynomial IntPolynomial::exact_quotient(const Integer& divisor) const {
  if (divisor == 0) throw InvalidInput("division by zero");
  IntPolynomial out(variable_count_);
  for (const auto& [monomial, coefficient] : terms_) {
    if (!mpz_divisible_p(coefficient.get_mpz_t(), divisor.get_mpz_t())) {
      throw InvalidInput("coefficient not divisible by " + divisor.get_str());
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), coefficient.get_mpz_t(), divisor.get_mpz_t());
    out.terms_.emplace(monomial, std::move(q));
  }
  return out;
}

IntPolynomial IntPolynomial::with_leading_variable() const {
  IntPolynomial out(variable_count_ + 1);
  for (const auto& [monomial, coefficient] : terms_) {
    Exponents m;
    m.reserve(variable_count_ + 1);
    m.push_back(0);
    m.insert(m.end(), monomial.begin(), monomial.end());
    out.terms_.emplace(std::move(m), coefficient);
  }
  return out;
}

std::vector<std::complex<double>> IntPolynomial::specialize(std::size_t variable,
                                                            std::span<const std::complex<double>> point) const {
  if (point.size() != variable_count_) {
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                      std::to_string(variable_count_) + " variables");
  }
  if (variable >= variable_count_) throw DomainError("specialization variable out of range");
  const auto tables = power_tables(*this, point);
  std::vector<std::complex<double>> coefficients(degree_in(variable) + 1, 0.0);
  for (const auto& [monomial, coefficient] : terms_) {
    std::complex<double> term = coefficient.get_d();
    for (std::size_t i = 0; i < variable_count_; ++i) {
      if (i != variable && monomial[i] > 0) term *= tables[i][monomial[i]];
    }
    coefficients[monomial[variable]] += term;
  }
  return coefficients;
}

std::complex<double> IntPolynomial::evaluate(std::span<const std::complex<double>> point) const {
  if (point.size() != variable_count_) {
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                      std::to_string(variable_count_) + " variables");
  }
  if (terms_.empty()) return 0.0;
  if (variable_count_ == 0) return terms_.begin()->second.get_d();
  const auto coefficients = specialize(0, point);
  return horner(coefficients, point[0]);
}

std::complex<double> horner(std::span<const std::complex<double>> coefficients, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string IntPolynomial::to_string(std::span<const std::string> names) const {
  std::vector<std::string> defaults;
  if (names.size() < variable_count_) {
    defaults = default_variable_names(variable_count_);
    names = defaults;
  }
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [monomial, coefficient] = *it;
    Integer magnitude = abs(coefficient);
    if (first) {
      if (coefficient < 0) os << "-";
    } else {
      os << (coefficient < 0 ? " - " : " + ");
    }
    first = false;
    const bool is_unit_monomial = degree_of(monomial) == 0;
    bool need_star = false;
    if (magnitude != 1 || is_unit_monomial) {
      os << magnitude.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < variable_count_; ++i) {
      if (monomial[i] == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (monomial[i] > 1) os << "^" << monomial[i];
      need_star = true;
    }
  }
  return os.str();
}

Normalization normalize(const IntPolynomial& poly) {
  if (poly.is_zero()) throw InvalidInput("cannot normalize the zero polynomial");
  Normalization out;
  out.content = poly.content();
  out.unit = poly.leading_coefficient() < 0 ? -1 : 1;
  out.primitive = poly.exact_quotient(out.content);
  if (out.unit < 0) out.primitive = -out.primitive;
  return out;
}

IntPolynomial build_p_gamma(const IntPolynomial& alpha, const IntPolynomial& beta) {
  if (alpha.is_zero() || beta.is_zero()) throw InvalidInput("build_p_gamma needs nonzero alpha and beta");
  if (alpha.variable_count() != beta.variable_count()) {
    throw InvalidInput("alpha and beta must share the same variable count");
  }
  const auto b = alpha.variable_count();
  const auto t = IntPolynomial::variable(b + 1, 0);
  return alpha.with_leading_variable() * t - beta.with_leading_variable();
}

std::vector<std::string> default_variable_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back("z" + std::to_string(i + 1));
  return names;
}

}  // namespace toricheight
