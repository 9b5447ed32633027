// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/factored.hpp"

#include <sstream>

#include "toricheight/errors.hpp"

namespace toricheight {

NormalizedIrreducible NormalizedIrreducible::prime(const Integer& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    throw InvalidInput(p.get_str() + " is not a prime");
  }
  return NormalizedIrreducible(p);
}

NormalizedIrreducible NormalizedIrreducible::polynomial(IntPolynomial primitive) {
  if (primitive.is_zero() || primitive.total_degree() == 0) {
    throw InvalidInput("polynomial place must have positive degree: " + primitive.to_string());
  }
  if (primitive.content() != 1) {
    throw InvalidInput("polynomial place must have content 1: " + primitive.to_string());
  }
  if (primitive.leading_coefficient() < 0) {
    throw InvalidInput("polynomial place must have positive leading coefficient: " + primitive.to_string());
  }
  return NormalizedIrreducible(std::move(primitive));
}

const Integer& NormalizedIrreducible::prime_value() const {
  if (!is_prime()) throw InvalidInput("place is not a prime");
  return std::get<Integer>(value_);
}

const IntPolynomial& NormalizedIrreducible::poly() const {
  if (is_prime()) throw InvalidInput("place is not a polynomial");
  return std::get<IntPolynomial>(value_);
}

std::optional<std::size_t> NormalizedIrreducible::variable_count() const {
  if (is_prime()) return std::nullopt;
  return poly().variable_count();
}

std::string NormalizedIrreducible::to_string() const {
  return is_prime() ? prime_value().get_str() : "(" + poly().to_string() + ")";
}

bool operator==(const NormalizedIrreducible& lhs, const NormalizedIrreducible& rhs) {
  return lhs.value_ == rhs.value_;
}

bool operator<(const NormalizedIrreducible& lhs, const NormalizedIrreducible& rhs) {
  if (lhs.is_prime() != rhs.is_prime()) return lhs.is_prime();
  if (lhs.is_prime()) return lhs.prime_value() < rhs.prime_value();
  return lhs.poly() < rhs.poly();
}

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
  Integer rest = abs(n);
  if (rest < 1) throw InvalidInput("cannot factor zero");
  std::vector<std::pair<Integer, unsigned>> out;
  constexpr unsigned long kTrialLimit = 10'000'000;
  for (unsigned long d = 2; d <= kTrialLimit && Integer(d) * d <= rest; d += (d == 2 ? 1 : 2)) {
    unsigned multiplicity = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++multiplicity;
    }
    if (multiplicity > 0) out.emplace_back(Integer(d), multiplicity);
  }
  if (rest > 1) {
    if (mpz_probab_prime_p(rest.get_mpz_t(), 30) == 0) {
      throw InvalidInput("integer " + n.get_str() + " too large to factor; give its prime factors explicitly");
    }
    out.emplace_back(rest, 1);
  }
  return out;
}

FactoredElement::FactoredElement(int sign, FactorMap factors) : sign_(sign), factors_(std::move(factors)) {
  if (sign_ != 1 && sign_ != -1) throw InvalidInput("sign must be +1 or -1");
  std::optional<std::size_t> vars;
  for (const auto& [place, exponent] : factors_) {
    if (exponent == 0) throw InvalidInput("factor " + place.to_string() + " has exponent 0");
    if (auto v = place.variable_count()) {
      if (vars && *vars != *v) throw InvalidInput("factors over different variable counts");
      vars = v;
    }
  }
}

FactoredElement FactoredElement::integer(const Integer& n) {
  if (n == 0) throw InvalidInput("zero is not an element of the multiplicative group");
  FactorMap factors;
  for (const auto& [p, e] : factor_integer(n)) factors.emplace(NormalizedIrreducible::prime(p), static_cast<int>(e));
  return FactoredElement(n < 0 ? -1 : 1, std::move(factors));
}

FactoredElement FactoredElement::prime_power(const Integer& p, int exponent) {
  FactorMap factors;
  if (exponent != 0) factors.emplace(NormalizedIrreducible::prime(p), exponent);
  return FactoredElement(1, std::move(factors));
}

FactoredElement FactoredElement::from_polynomial(const IntPolynomial& poly, int exponent) {
  const auto n = normalize(poly);
  FactoredElement base = integer(n.content);
  if (n.unit < 0) base = base * FactoredElement(-1, {});
  if (n.primitive.total_degree() > 0) {
    FactorMap f;
    f.emplace(NormalizedIrreducible::polynomial(n.primitive), 1);
    base = base * FactoredElement(1, std::move(f));
  }
  return base.pow(exponent);
}

std::optional<std::size_t> FactoredElement::variable_count() const {
  for (const auto& [place, exponent] : factors_) {
    if (auto v = place.variable_count()) return v;
  }
  return std::nullopt;
}

FactoredElement FactoredElement::operator*(const FactoredElement& other) const {
  FactorMap merged = factors_;
  for (const auto& [place, exponent] : other.factors_) {
    auto [it, inserted] = merged.try_emplace(place, exponent);
    if (!inserted) {
      it->second += exponent;
      if (it->second == 0) merged.erase(it);
    }
  }
  return FactoredElement(sign_ * other.sign_, std::move(merged));
}

FactoredElement FactoredElement::inverse() const { return pow(-1); }

FactoredElement FactoredElement::pow(int exponent) const {
  if (exponent == 0) return one();
  FactorMap scaled;
  for (const auto& [place, e] : factors_) scaled.emplace(place, e * exponent);
  const int s = (sign_ < 0 && exponent % 2 != 0) ? -1 : 1;
  return FactoredElement(s, std::move(scaled));
}

std::pair<IntPolynomial, IntPolynomial> FactoredElement::numerator_denominator(std::size_t variables) const {
  if (auto v = variable_count(); v && *v != variables) {
    throw InvalidInput("element is over " + std::to_string(*v) + " variables, requested " + std::to_string(variables));
  }
  IntPolynomial alpha = IntPolynomial::constant(variables, sign_);
  IntPolynomial beta = IntPolynomial::constant(variables, 1);
  for (const auto& [place, e] : factors_) {
    const IntPolynomial q = place.is_prime() ? IntPolynomial::constant(variables, place.prime_value()) : place.poly();
    if (e > 0) {
      alpha *= q.pow(static_cast<unsigned>(e));
    } else {
      beta *= q.pow(static_cast<unsigned>(-e));
    }
  }
  return {alpha, beta};
}

std::string FactoredElement::to_string() const {
  std::ostringstream os;
  if (sign_ < 0) os << "-";
  if (factors_.empty()) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (const auto& [place, e] : factors_) {
    if (!first) os << "*";
    first = false;
    os << place.to_string();
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

int ord_at(const FactoredElement& gamma, const NormalizedIrreducible& v) {
  auto it = gamma.factors().find(v);
  return it == gamma.factors().end() ? 0 : it->second;
}

}  // namespace toricheight
