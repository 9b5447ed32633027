// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/mahler.hpp"

#include <cmath>
#include <numbers>

#include "toricheight/errors.hpp"
#include "toricheight/roots.hpp"

namespace toricheight {

namespace {

using cd = std::complex<double>;

cd unit_point(double angle) {
  const double theta = 2.0 * std::numbers::pi * angle;
  return {std::cos(theta), std::sin(theta)};
}

// Dense univariate polynomials over Q, ascending coefficients, no trailing zeros.
using QPoly = std::vector<Rational>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly monic(QPoly a) {
  const Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

QPoly derivative(const QPoly& a) {
  QPoly out;
  for (std::size_t k = 1; k < a.size(); ++k) out.push_back(a[k] * static_cast<long>(k));
  trim(out);
  return out;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<QPoly, QPoly> divide(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

// Yun's algorithm: monic a = prod_i f_i^i with the f_i square-free and coprime.
std::vector<QPoly> square_free_parts(const QPoly& a) {
  std::vector<QPoly> parts;
  QPoly g = gcd(a, derivative(a));
  QPoly c = divide(a, g).first;
  QPoly d = divide(derivative(a), g).first;
  for (;;) {
    const auto dc = derivative(c);
    QPoly e = d;
    e.resize(std::max(e.size(), dc.size()));
    for (std::size_t k = 0; k < dc.size(); ++k) e[k] -= dc[k];
    trim(e);
    if (c.size() <= 1) break;
    const QPoly f = e.empty() ? monic(c) : gcd(c, e);
    parts.push_back(f);
    c = divide(c, f).first;
    d = e.empty() ? QPoly{} : divide(e, f).first;
  }
  return parts;
}

}  // namespace

double log_abs_integer(const Integer& n) {
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 53) return std::log(std::abs(n.get_d()));
  // n = d * 2^e keeps large integers in range.
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
  return std::log(std::abs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

std::string to_string(MahlerMethod method) {
  switch (method) {
    case MahlerMethod::jensen_exact:
      return "jensen-exact";
    case MahlerMethod::mc_jensen_reduced:
      return "mc-jensen-reduced";
    case MahlerMethod::mc_plain:
      return "mc-plain";
  }
  return "unknown";
}

MahlerResult mahler_univariate(const IntPolynomial& poly) {
  if (poly.is_zero()) throw InvalidInput("the zero polynomial has no Mahler measure");
  const auto support = poly.support();
  if (support.size() > 1) throw InvalidInput("mahler_univariate needs a polynomial in one variable: " + poly.to_string());
  MahlerResult out;
  out.method = MahlerMethod::jensen_exact;
  if (support.empty()) {
    out.value = log_abs_integer(poly.leading_coefficient());
    return out;
  }
  const auto var = support.front();
  QPoly exact(poly.degree_in(var) + 1);
  for (const auto& [monomial, c] : poly.terms()) exact[monomial[var]] += Rational(c);
  // Repeated roots are split off exactly; clustered floating roots would otherwise pass the residual test far from
  // the true root.
  out.value = log_abs_integer(poly.leading_coefficient());
  const auto parts = square_free_parts(monic(exact));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].size() <= 1) continue;
    std::vector<cd> coefficients(parts[i].size());
    for (std::size_t k = 0; k < parts[i].size(); ++k) coefficients[k] = parts[i][k].get_d();
    out.value += static_cast<double>(i + 1) * jensen_log_measure(coefficients);
  }
  return out;
}

std::optional<std::size_t> default_reduction_variable(const IntPolynomial& poly) {
  std::optional<std::size_t> best;
  std::uint32_t best_degree = 0;
  for (std::size_t i = 0; i < poly.variable_count(); ++i) {
    const auto d = poly.degree_in(i);
    if (d > best_degree) {
      best_degree = d;
      best = i;
    }
  }
  return best;
}

MahlerResult mahler_mc(const IntPolynomial& poly, const SamplerConfig& config,
                       std::optional<std::size_t> reduce_variable) {
  if (poly.is_zero()) throw InvalidInput("the zero polynomial has no Mahler measure");
  config.validate();
  if (reduce_variable && *reduce_variable >= poly.variable_count()) {
    throw InvalidInput("reduction variable out of range");
  }
  if (reduce_variable && poly.degree_in(*reduce_variable) == 0) reduce_variable.reset();

  const std::size_t skipped = reduce_variable.value_or(poly.variable_count());
  std::vector<std::size_t> sampled;
  for (auto v : poly.support()) {
    if (v != skipped) sampled.push_back(v);
  }
  const std::size_t b = poly.variable_count();

  TorusIntegrand integrand;
  if (reduce_variable) {
    const auto reduced = *reduce_variable;
    integrand = [&poly, &sampled, reduced, b](std::span<const double> angles) -> std::optional<double> {
      std::vector<cd> point(b, cd(1.0));
      for (std::size_t k = 0; k < sampled.size(); ++k) point[sampled[k]] = unit_point(angles[k]);
      const auto coefficients = poly.specialize(reduced, point);
      bool all_zero = true;
      for (const auto& c : coefficients) all_zero = all_zero && std::abs(c) < 1e-300;
      if (all_zero) return std::nullopt;
      return jensen_log_measure(coefficients);
    };
  } else {
    integrand = [&poly, &sampled, b](std::span<const double> angles) -> std::optional<double> {
      std::vector<cd> point(b, cd(1.0));
      for (std::size_t k = 0; k < sampled.size(); ++k) point[sampled[k]] = unit_point(angles[k]);
      const double magnitude = std::abs(poly.evaluate(point));
      if (!(magnitude >= 1e-300)) return std::nullopt;
      return std::log(magnitude);
    };
  }

  const auto mean = integrate_over_torus(config, sampled.size(), integrand, 0.01);
  MahlerResult out;
  out.value = mean.value;
  out.std_error = mean.std_error;
  out.method = reduce_variable ? MahlerMethod::mc_jensen_reduced : MahlerMethod::mc_plain;
  out.samples_used = mean.samples;
  out.rejected_samples = mean.rejected;
  return out;
}

MahlerResult height_weight(const NormalizedIrreducible& v, const SamplerConfig& config) {
  if (v.is_prime()) {
    MahlerResult out;
    out.value = log_abs_integer(v.prime_value());
    return out;
  }
  const auto& poly = v.poly();
  if (poly.support().size() <= 1) return mahler_univariate(poly);
  return mahler_mc(poly, config, default_reduction_variable(poly));
}

}  // namespace toricheight
