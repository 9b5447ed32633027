// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "toricheight/factored.hpp"
#include "toricheight/places.hpp"
#include "toricheight/roof.hpp"
#include "toricheight/sampling.hpp"

namespace toricheight {

/// Closure of t -> (f_0 t^{m_0} : ... : f_r t^{m_r}) in projective space over Q(z1..zb).
class SubtorusData {
 public:
  SubtorusData(std::size_t base_dimension, LatticePointSet exponents, std::vector<FactoredElement> coefficients);

  std::size_t base_dimension() const noexcept { return base_dimension_; }
  std::size_t torus_dimension() const noexcept { return exponents_.dimension(); }
  const LatticePointSet& exponents() const noexcept { return exponents_; }
  const std::vector<FactoredElement>& coefficients() const noexcept { return coefficients_; }

 private:
  std::size_t base_dimension_;
  LatticePointSet exponents_;
  std::vector<FactoredElement> coefficients_;
};

/// Roof of a finite place with lifts a_j = -ord_V(f_j); the place weight is kept apart.
struct FiniteRoof {
  NormalizedIrreducible place;
  RoofFunction<Rational> roof;
  Rational integral;
};

/// One entry per irreducible factor occurring in some f_j, including those with zero integral.
std::vector<FiniteRoof> finite_contribution(const SubtorusData& data);

/// Integral of the Archimedean roof at one torus point; nullopt near a zero or pole of some f_j.
std::optional<double> archimedean_roof_integral(const SubtorusData& data, std::span<const std::complex<double>> point);

MonteCarloMean archimedean_contribution(const SubtorusData& data, const SamplerConfig& config);

struct FinitePlaceRecord {
  NormalizedIrreducible place;
  Rational roof_integral;
  MahlerResult weight;
};

struct HeightReport {
  double total = 0.0;
  double std_error = 0.0;
  std::vector<FinitePlaceRecord> finite_part;
  MonteCarloMean archimedean;
  Integer factorial_normalizer;  // (n+1)!
  Rational degree;               // n! vol(polytope)
  SamplerConfig sampler;

  /// sum_V h(V) I_V, summed in record order.
  double finite_value() const;
  /// (n+1)! sum_V I_V h(V) with the weights kept symbolic.
  LogLinearForm exact_part() const;
};

HeightReport height_translated_subtorus(const SubtorusData& data, const SamplerConfig& config);

/// Height of (gamma_0 : ... : gamma_r); nullopt marks a zero coordinate.
Estimate point_height(std::span<const std::optional<FactoredElement>> gammas, const SamplerConfig& config);

/// Height of the subtorus with n = 0: mean of max_l log|f_l(p)|. Rejects a common factor.
Estimate n0_height(std::span<const FactoredElement> fs, const SamplerConfig& config);

/// Integral of the Archimedean roof for n = 1, m_i = i, f_0 = f_r = 1, by sums of
/// interpolation maxima at the integer points.
double n1_closed_form(const SubtorusData& data, std::span<const std::complex<double>> point);

/// Global roof at x: sum_V h(V) roof_V(x) plus the mean over the torus of roof_p(x).
Estimate global_roof_eval(const SubtorusData& data, std::span<const Rational> x, const SamplerConfig& config);

struct FubiniReport {
  double via_roof_integrals = 0.0;  // integrate every local roof, then sum over places
  double via_global_roof = 0.0;     // integrate the global roof on the quadrature grid
  double difference = 0.0;          // via_roof_integrals - via_global_roof
  double std_error_roof_integrals = 0.0;
  double std_error_global_roof = 0.0;
  double std_error_difference = 0.0;  // paired over the shared samples
  double grid_bound = 0.0;            // 0 <= difference <= grid_bound up to sampling error
  std::int64_t resolution = 0;
  std::size_t nodes = 0;
  HeightReport height;
};

FubiniReport fubini_check(const SubtorusData& data, std::int64_t resolution, const SamplerConfig& config);

}  // namespace toricheight
