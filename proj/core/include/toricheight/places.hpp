// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "toricheight/factored.hpp"
#include "toricheight/mahler.hpp"
#include "toricheight/sampling.hpp"

namespace toricheight {

// Places of Q(z1,...,zb) for projective space over the integers with canonical metrics.
//
// Finite places are hypersurfaces, weighted by the Mahler measure of their equation
// (log p for a prime). The hyperplane at infinity has weight m(x0) = 0 and never
// contributes, so it is not represented. Archimedean places are Haar-distributed
// points of the compact torus.

struct FinitePlace {
  NormalizedIrreducible irreducible;
  MahlerResult weight;
};

struct ArchimedeanPlace {
  /// Angles in [0, 1): the point (exp(2 pi i a_1), ..., exp(2 pi i a_b)).
  std::vector<double> angles;

  explicit ArchimedeanPlace(std::vector<double> angles);
  std::vector<std::complex<double>> point() const;
};

using Place = std::variant<FinitePlace, ArchimedeanPlace>;

std::vector<std::complex<double>> torus_point(std::span<const double> angles);

/// Exact bookkeeping for sums c0 + sum_p q_p log p + sum_V q_V m(P_V) with rational q.
class LogLinearForm {
 public:
  struct MahlerTerm {
    Rational coefficient;
    MahlerResult weight;
  };

  void add_constant(const Rational& c);
  /// Adds q * h(v): to the log-prime part for a prime, to the Mahler part otherwise.
  void add_place(const NormalizedIrreducible& v, const Rational& q, const MahlerResult& weight);
  LogLinearForm& operator+=(const LogLinearForm& other);
  LogLinearForm scaled(const Rational& factor) const;

  const Rational& constant() const noexcept { return constant_; }
  const std::map<Integer, Rational>& log_primes() const noexcept { return log_primes_; }
  const std::map<IntPolynomial, MahlerTerm>& mahler_terms() const noexcept { return mahler_terms_; }

  bool is_zero() const noexcept;
  double value() const;
  /// Propagated from the standard errors of Monte-Carlo Mahler weights.
  double std_error() const;
  std::string to_string() const;

 private:
  Rational constant_ = 0;
  std::map<Integer, Rational> log_primes_;
  std::map<IntPolynomial, MahlerTerm> mahler_terms_;
};

/// A value with an exact finite-place part and a Monte-Carlo Archimedean part.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  LogLinearForm exact_part;
  MonteCarloMean archimedean;

  static Estimate combine(LogLinearForm exact_part, MonteCarloMean archimedean);
};

/// Caches h(V) per place. Each polynomial place gets its own derived random stream.
class WeightTable {
 public:
  explicit WeightTable(SamplerConfig config) : config_(std::move(config)) {}
  const MahlerResult& weight(const NormalizedIrreducible& v);
  FinitePlace place(const NormalizedIrreducible& v) { return {v, weight(v)}; }

 private:
  SamplerConfig config_;
  std::map<NormalizedIrreducible, MahlerResult> cache_;
};

/// Weight config used for the place v: the Archimedean config on a stream derived from v.
SamplerConfig weight_stream(const SamplerConfig& config, const NormalizedIrreducible& v);

/// Evaluates log|gamma(p)| from the factored form: sum e_i log|q_i(p)|.
class FactoredEvaluator {
 public:
  explicit FactoredEvaluator(const FactoredElement& gamma);
  /// nullopt when some factor is within 1e-300 of zero at `point`.
  std::optional<double> log_abs(std::span<const std::complex<double>> point) const;

 private:
  double constant_ = 0.0;
  std::vector<std::pair<const IntPolynomial*, int>> polys_;
};

/// -h(V) ord_V(gamma).
double log_abs_finite(const FactoredElement& gamma, const FinitePlace& place);
/// log|gamma(p)|, or nullopt (resample) near a zero or pole.
std::optional<double> log_abs_arch(const FactoredElement& gamma, const ArchimedeanPlace& place);

/// Common torus dimension b of the elements (0 when only constants occur).
std::size_t torus_dimension(std::span<const FactoredElement> gammas);

/// Size: integral over all places of log max_i |gamma_i|_w.
Estimate size(std::span<const FactoredElement> gammas, const SamplerConfig& config);

/// Integral over all places of log|gamma|_w, which the product formula says is 0.
/// The finite part uses the place weights, the Archimedean part averages log|gamma(p)| directly.
Estimate product_formula_defect(const FactoredElement& gamma, const SamplerConfig& config);

}  // namespace toricheight
