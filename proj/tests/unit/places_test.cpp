// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "builders.hpp"
#include "oracles.hpp"
#include "toricheight/errors.hpp"
#include "toricheight/places.hpp"

namespace toricheight {
namespace {

using testing::fe;
using testing::sampler;
using testing::terms;
using testing::univariate;

const double kLog2 = std::log(2.0);

TEST(Sampler, ValidatesBatches) {
  EXPECT_THROW(sampler(1000, 1, 7).validate(), InvalidInput);
  EXPECT_THROW(sampler(0, 1, 1).validate(), InvalidInput);
  EXPECT_NO_THROW(sampler(1000, 1, 8).validate());
}

TEST(Sampler, AnglesInUnitInterval) {
  for (auto kind : {SamplerKind::plain, SamplerKind::lattice}) {
    auto config = sampler(1000, 5, 10);
    config.kind = kind;
    TorusSampler s(config, 3);
    std::vector<double> a(3);
    for (int b = 0; b < 10; ++b) {
      for (int i = 0; i < 100; ++i) {
        s.point(b, i, a);
        for (double x : a) {
          EXPECT_GE(x, 0.0);
          EXPECT_LT(x, 1.0);
        }
      }
    }
  }
}

TEST(Sampler, ConstantIntegrandIsExact) {
  const auto m = integrate_over_torus(sampler(10000, 3), 2, [](std::span<const double>) { return std::optional(0.1); });
  EXPECT_EQ(m.value, 0.1);
  EXPECT_EQ(m.std_error, 0.0);
}

TEST(Sampler, LatticeIntegratesTrigonometricPolynomial) {
  // Mean of cos(2 pi (a + 2 b)) is 0; the shifted lattice is far more accurate than plain sampling here.
  const auto m = integrate_over_torus(sampler(10000, 3), 2, [](std::span<const double> a) {
    return std::optional(std::cos(2 * M_PI * (a[0] + 2 * a[1])));
  });
  EXPECT_LT(std::abs(m.value), 1e-6);
}

TEST(Sampler, SingleBatchUsesSampleVariance) {
  auto config = sampler(10000, 3, 1);
  config.kind = SamplerKind::plain;
  const auto m = integrate_over_torus(config, 1, [](std::span<const double> a) { return std::optional(a[0]); });
  EXPECT_NEAR(m.std_error, std::sqrt(1.0 / 12.0 / 10000.0), 1e-4);
}

TEST(Sampler, RejectionAndFailure) {
  std::int64_t calls = 0;
  const auto ok = integrate_over_torus(sampler(1000, 3), 1, [&](std::span<const double>) -> std::optional<double> {
    return ++calls % 500 == 0 ? std::nullopt : std::optional(1.0);
  });
  EXPECT_GT(ok.rejected, 0);
  EXPECT_EQ(ok.value, 1.0);
  EXPECT_THROW(integrate_over_torus(sampler(1000, 3), 1, [](std::span<const double>) { return std::optional<double>(); }),
               NumericalFailure);
}

TEST(LogAbs, FiniteExamples) {
  const auto v = NormalizedIrreducible::polynomial(univariate({-2, 1}));
  const FinitePlace place{v, mahler_univariate(v.poly())};
  EXPECT_NEAR(log_abs_finite(fe(univariate({-2, 1})), place), -kLog2, 1e-12);
  EXPECT_EQ(log_abs_finite(FactoredElement::one(), place), 0.0);
  const FinitePlace two{NormalizedIrreducible::prime(Integer(2)), {kLog2}};
  EXPECT_EQ(log_abs_finite(FactoredElement::prime_power(Integer(2), -1), two), kLog2);
}

TEST(LogAbs, ArchimedeanExamples) {
  const ArchimedeanPlace p({0.37});
  EXPECT_NEAR(*log_abs_arch(fe(2), p), kLog2, 1e-15);
  EXPECT_NEAR(*log_abs_arch(fe(univariate({0, 1})), p), 0.0, 1e-15);
  EXPECT_NEAR(*log_abs_arch(fe(univariate({-2, 1})), ArchimedeanPlace({0.0})), 0.0, 1e-15);
  EXPECT_FALSE(log_abs_arch(fe(univariate({-1, 1})), ArchimedeanPlace({0.0})).has_value());
  EXPECT_THROW(ArchimedeanPlace({1.0}), DomainError);
}

TEST(Size, Examples) {
  const std::vector<FactoredElement> one_two{fe(1), fe(2)};
  const auto a = size(one_two, sampler(1000));
  EXPECT_EQ(a.value, kLog2);
  EXPECT_EQ(a.std_error, 0.0);

  const std::vector<FactoredElement> zz{fe(univariate({0, 1})), fe(univariate({0, 1}))};
  EXPECT_NEAR(size(zz, sampler(1000)).value, 0.0, 1e-15);

  const std::vector<FactoredElement> pair{fe(1), fe(univariate({-2, 1}))};
  const auto c = size(pair, sampler(20000));
  EXPECT_TRUE(c.exact_part.is_zero());
  const double oracle = testing::circle_log_mean(testing::complex_coefficients({-2, 1}), 4096);
  EXPECT_NEAR(oracle, kLog2, 1e-12);
  EXPECT_LE(std::abs(c.value - oracle), 3 * c.std_error + 1e-9);

  EXPECT_THROW(size(std::vector<FactoredElement>{}, sampler(100)), InvalidInput);
}

TEST(Size, ExchangeSymmetric) {
  const std::vector<FactoredElement> ab{fe(univariate({1, 1})), fe(univariate({-2, 1}), 2) * fe(3)};
  const std::vector<FactoredElement> ba{ab[1], ab[0]};
  const auto x = size(ab, sampler(4000, 8)), y = size(ba, sampler(4000, 8));
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.std_error, y.std_error);
}

TEST(Size, InvariantUnderCommonScaling) {
  const std::vector<FactoredElement> base{fe(univariate({1, 1})), fe(univariate({-3, 1}))};
  const auto delta = fe(univariate({-2, 1}), -2) * fe(5);
  const std::vector<FactoredElement> scaled{base[0] * delta, base[1] * delta};
  const auto x = size(base, sampler(40000, 2)), y = size(scaled, sampler(40000, 2));
  const double se = std::hypot(x.std_error, y.std_error);
  EXPECT_LE(std::abs(x.value - y.value), 3 * se + 1e-9);
}

TEST(Size, DisjointFactorSetsHaveNoFinitePart) {
  const std::vector<FactoredElement> g{fe(univariate({1, 1}), 2) * fe(3), fe(univariate({-2, 1})) * fe(2)};
  EXPECT_TRUE(size(g, sampler(1000)).exact_part.is_zero());
}

TEST(ProductFormula, Examples) {
  const auto two = product_formula_defect(fe(2), sampler(1000));
  EXPECT_EQ(two.value, 0.0);
  EXPECT_EQ(two.std_error, 0.0);
  const auto z = product_formula_defect(fe(univariate({0, 1})), sampler(1000));
  EXPECT_NEAR(z.value, 0.0, 1e-15);
  const auto zm2 = product_formula_defect(fe(univariate({-2, 1})), sampler(100000));
  EXPECT_LE(std::abs(zm2.value), 3 * zm2.std_error + 1e-12);
}

TEST(ProductFormula, PrimeWeightsAreSymbolic) {
  const auto g = FactoredElement::prime_power(Integer(3), 2) * FactoredElement::prime_power(Integer(5), -1);
  const auto d = product_formula_defect(g, sampler(1000));
  EXPECT_EQ(d.exact_part.log_primes().at(Integer(3)), Rational(-2));
  EXPECT_EQ(d.exact_part.log_primes().at(Integer(5)), Rational(1));
  EXPECT_NEAR(d.value, 0.0, 1e-15);
}

}  // namespace
}  // namespace toricheight
