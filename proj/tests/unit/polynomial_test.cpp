// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "builders.hpp"
#include "toricheight/errors.hpp"
#include "toricheight/factored.hpp"
#include "toricheight/polynomial.hpp"
#include "toricheight/serialization.hpp"

namespace toricheight {
namespace {

using testing::fe;
using testing::terms;
using testing::univariate;
using cd = std::complex<double>;

TEST(Polynomial, DropsZeroCoefficients) {
  const auto p = terms(2, {{{0, 0}, 0}, {{1, 0}, 3}});
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_THROW(IntPolynomial(2, {{{1}, Integer(1)}}), InvalidInput);
}

TEST(Polynomial, EvalComplexExamples) {
  const auto z1 = IntPolynomial::variable(1, 0);
  const std::vector<cd> i{{0.0, 1.0}};
  EXPECT_EQ(eval_complex(z1, i), cd(0.0, 1.0));
  const std::vector<cd> one{{1.0, 0.0}};
  EXPECT_EQ(eval_complex(univariate({2, 1}), one), cd(3.0, 0.0));
  const auto p = terms(2, {{{1, 1}, 1}, {{0, 0}, -1}});
  const std::vector<cd> pt{std::polar(1.0, std::numbers::pi / 2), std::polar(1.0, -std::numbers::pi / 2)};
  EXPECT_LT(std::abs(eval_complex(p, pt)), 1e-15);
  EXPECT_THROW(eval_complex(p, one), DomainError);
}

TEST(Polynomial, NormalizeExamples) {
  auto n = normalize(univariate({-9, 0, 6}));
  EXPECT_EQ(n.unit, 1);
  EXPECT_EQ(n.content, 3);
  EXPECT_EQ(n.primitive, univariate({-3, 0, 2}));

  n = normalize(IntPolynomial::constant(1, Integer(-5)));
  EXPECT_EQ(n.unit, -1);
  EXPECT_EQ(n.content, 5);
  EXPECT_EQ(n.primitive, IntPolynomial::constant(1, Integer(1)));

  n = normalize(univariate({0, 1}));
  EXPECT_EQ(n.unit, 1);
  EXPECT_EQ(n.content, 1);
  EXPECT_EQ(n.primitive, univariate({0, 1}));

  EXPECT_THROW(normalize(IntPolynomial(1)), InvalidInput);
}

TEST(Polynomial, LeadingCoefficientIsGradedLex) {
  // z1 z2 has higher total degree than z1^1; among degree-2 monomials z1^2 leads.
  const auto p = terms(2, {{{1, 1}, -4}, {{0, 2}, 6}, {{1, 0}, 2}});
  EXPECT_EQ(p.leading_coefficient(), -4);
  const auto q = terms(2, {{{1, 1}, 3}, {{2, 0}, -1}});
  EXPECT_EQ(q.leading_coefficient(), -1);
  const auto n = normalize(q);
  EXPECT_EQ(n.unit, -1);
  EXPECT_GT(n.primitive.leading_coefficient(), 0);
}

TEST(Polynomial, BuildPGammaExamples) {
  const auto two = IntPolynomial::constant(0, Integer(2));
  const auto one = IntPolynomial::constant(0, Integer(1));
  EXPECT_EQ(build_p_gamma(two, one), terms(1, {{{1}, 2}, {{0}, -1}}));
  EXPECT_EQ(build_p_gamma(one, one), terms(1, {{{1}, 1}, {{0}, -1}}));
  // (z1 + 1) t - z1 in the variables (t, z1).
  const auto p = build_p_gamma(univariate({1, 1}), univariate({0, 1}));
  EXPECT_EQ(p, terms(2, {{{1, 1}, 1}, {{1, 0}, 1}, {{0, 1}, -1}}));
  EXPECT_THROW(build_p_gamma(IntPolynomial(1), one), InvalidInput);
}

TEST(Polynomial, ArithmeticAndToString) {
  const auto a = univariate({-2, 1});
  EXPECT_EQ(a.pow(2), univariate({4, -4, 1}));
  EXPECT_EQ(a * a - a.pow(2), IntPolynomial(1));
  EXPECT_EQ(a.to_string(), "z1 - 2");
}

TEST(Polynomial, NormalizeReconstructsRandomInputs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testing::random_coefficients(rng, 1 + trial % 5, 30);
    for (auto& x : c) x *= 1 + trial % 4;
    const auto p = univariate(c);
    const auto n = normalize(p);
    EXPECT_EQ(n.primitive * Integer(n.unit) * n.content, p);
    EXPECT_EQ(n.primitive.content(), 1);
    const auto again = normalize(n.primitive);
    EXPECT_EQ(again.primitive, n.primitive);
    EXPECT_EQ(again.content, 1);
    EXPECT_EQ(again.unit, 1);
  }
}

TEST(Polynomial, EvaluationIsARingHomomorphism) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-9, 9);
  std::uniform_int_distribution<std::uint32_t> expo(0, 3);
  std::uniform_real_distribution<double> angle(0.0, 1.0);
  auto random_poly = [&] {
    IntPolynomial::TermMap t;
    for (int k = 0; k < 5; ++k) t[{expo(rng), expo(rng)}] += Integer(coef(rng));
    auto p = IntPolynomial(2, std::move(t));
    return p.is_zero() ? IntPolynomial::constant(2, Integer(1)) : p;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_poly();
    const auto q = random_poly();
    const std::vector<cd> pt{std::polar(1.3, 6.28 * angle(rng)), std::polar(0.7, 6.28 * angle(rng))};
    const cd ep = eval_complex(p, pt), eq = eval_complex(q, pt);
    const cd prod = eval_complex(p * q, pt), sum = eval_complex(p + q, pt);
    EXPECT_LE(std::abs(prod - ep * eq), 1e-12 * std::max(1.0, std::abs(ep) * std::abs(eq)));
    EXPECT_LE(std::abs(sum - (ep + eq)), 1e-12 * std::max(1.0, std::abs(ep) + std::abs(eq)));
  }
}

TEST(Factored, OrdAtExamples) {
  const auto v = NormalizedIrreducible::polynomial(univariate({-2, 1}));
  const auto gamma = fe(univariate({-2, 1}), 3) * FactoredElement::prime_power(Integer(2), -1);
  EXPECT_EQ(ord_at(gamma, v), 3);
  EXPECT_EQ(ord_at(gamma, NormalizedIrreducible::prime(Integer(2))), -1);
  EXPECT_EQ(ord_at(gamma, NormalizedIrreducible::polynomial(univariate({1, 1}))), 0);
}

TEST(Factored, FromPolynomialSplitsContentAndSign) {
  const auto g = fe(univariate({12, -6}));  // -6 (z1 - 2)
  EXPECT_EQ(g.sign(), -1);
  EXPECT_EQ(ord_at(g, NormalizedIrreducible::prime(Integer(2))), 1);
  EXPECT_EQ(ord_at(g, NormalizedIrreducible::prime(Integer(3))), 1);
  EXPECT_EQ(ord_at(g, NormalizedIrreducible::polynomial(univariate({-2, 1}))), 1);
  const auto [num, den] = g.numerator_denominator(1);
  EXPECT_EQ(num, univariate({12, -6}));
  EXPECT_EQ(den, IntPolynomial::constant(1, Integer(1)));
}

TEST(Factored, RejectsBadKeys) {
  EXPECT_THROW(NormalizedIrreducible::prime(Integer(6)), InvalidInput);
  EXPECT_THROW(NormalizedIrreducible::polynomial(univariate({2, -1})), InvalidInput);
  EXPECT_THROW(NormalizedIrreducible::polynomial(univariate({4, 2})), InvalidInput);
  EXPECT_THROW(fe(0), InvalidInput);
}

TEST(Factored, OrdIsAdditive) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(-3, 3);
  const std::vector<IntPolynomial> basis{univariate({-2, 1}), univariate({1, 1}), univariate({1, 1, 1})};
  const std::vector<long> primes{2, 3, 5};
  for (int trial = 0; trial < 50; ++trial) {
    auto random_element = [&] {
      FactoredElement g = FactoredElement::one();
      for (const auto& b : basis) {
        if (int k = e(rng)) g = g * fe(b, k);
      }
      for (long p : primes) {
        if (int k = e(rng)) g = g * FactoredElement::prime_power(Integer(p), k);
      }
      return g;
    };
    const auto a = random_element();
    const auto b = random_element();
    for (const auto& poly : basis) {
      const auto v = NormalizedIrreducible::polynomial(poly);
      EXPECT_EQ(ord_at(a * b, v), ord_at(a, v) + ord_at(b, v));
    }
    for (long p : primes) {
      const auto v = NormalizedIrreducible::prime(Integer(p));
      EXPECT_EQ(ord_at(a * b, v), ord_at(a, v) + ord_at(b, v));
    }
    EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(Serialization, PolynomialRoundTrip) {
  const auto p = terms(2, {{{0, 0}, -1}, {{1, 0}, 1}});
  const auto j = polynomial_to_json(p);
  EXPECT_EQ(j, nlohmann::json::parse(R"({"0,0": -1, "1,0": 1})"));
  EXPECT_EQ(polynomial_from_json(j, 2, ""), p);

  IntPolynomial big = IntPolynomial::constant(1, Integer("123456789012345678901234567890"));
  EXPECT_EQ(polynomial_from_json(polynomial_to_json(big), 1, ""), big);
}

TEST(Serialization, FactoredRoundTrip) {
  const auto gamma = fe(univariate({-2, 1}), 3) * FactoredElement::prime_power(Integer(2), -1) * fe(-1);
  const auto j = factored_to_json(gamma);
  EXPECT_EQ(j["sign"], -1);
  EXPECT_EQ(factored_from_json(j, 1, ""), gamma);
  EXPECT_EQ(factored_from_json(nlohmann::json(6), 1, ""), fe(6));
}

TEST(Serialization, ErrorsCarryThePath) {
  const auto j = nlohmann::json::parse(R"({"factors": [{"kind": "prime", "p": 4, "exp": 1}]})");
  try {
    factored_from_json(j, 1, "/coefficients/2");
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("/coefficients/2/factors/0"), std::string::npos) << e.what();
  }
  EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"1,2": 1})"), 1, ""), InvalidInput);
  EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"x": 1})"), 1, ""), InvalidInput);
}

}  // namespace
}  // namespace toricheight
