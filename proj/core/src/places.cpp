// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/places.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "toricheight/errors.hpp"

namespace toricheight {

namespace {

constexpr double kSingularMagnitude = 1e-300;

// FNV-1a of the canonical spelling: stable across platforms and standard libraries.
std::uint64_t place_tag(const NormalizedIrreducible& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : v.to_string()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ArchimedeanPlace::ArchimedeanPlace(std::vector<double> a) : angles(std::move(a)) {
  for (double x : angles) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("torus angles must lie in [0, 1)");
  }
}

std::vector<std::complex<double>> ArchimedeanPlace::point() const { return torus_point(angles); }

std::vector<std::complex<double>> torus_point(std::span<const double> angles) {
  std::vector<std::complex<double>> out(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double theta = 2.0 * std::numbers::pi * angles[k];
    out[k] = {std::cos(theta), std::sin(theta)};
  }
  return out;
}

void LogLinearForm::add_constant(const Rational& c) { constant_ += c; }

void LogLinearForm::add_place(const NormalizedIrreducible& v, const Rational& q, const MahlerResult& weight) {
  if (q == 0) return;
  if (v.is_prime()) {
    auto& c = log_primes_[v.prime_value()];
    c += q;
    if (c == 0) log_primes_.erase(v.prime_value());
    return;
  }
  auto [it, inserted] = mahler_terms_.try_emplace(v.poly(), MahlerTerm{q, weight});
  if (!inserted) {
    it->second.coefficient += q;
    if (it->second.coefficient == 0) mahler_terms_.erase(it);
  }
}

LogLinearForm& LogLinearForm::operator+=(const LogLinearForm& other) {
  constant_ += other.constant_;
  for (const auto& [p, q] : other.log_primes_) add_place(NormalizedIrreducible::prime(p), q, {});
  for (const auto& [poly, term] : other.mahler_terms_) {
    add_place(NormalizedIrreducible::polynomial(poly), term.coefficient, term.weight);
  }
  return *this;
}

LogLinearForm LogLinearForm::scaled(const Rational& factor) const {
  LogLinearForm out;
  if (factor == 0) return out;
  out.constant_ = constant_ * factor;
  for (const auto& [p, q] : log_primes_) out.log_primes_.emplace(p, q * factor);
  for (const auto& [poly, term] : mahler_terms_) {
    out.mahler_terms_.emplace(poly, MahlerTerm{term.coefficient * factor, term.weight});
  }
  return out;
}

bool LogLinearForm::is_zero() const noexcept {
  return constant_ == 0 && log_primes_.empty() && mahler_terms_.empty();
}

double LogLinearForm::value() const {
  double v = constant_.get_d();
  for (const auto& [p, q] : log_primes_) v += q.get_d() * log_abs_integer(p);
  for (const auto& [poly, term] : mahler_terms_) v += term.coefficient.get_d() * term.weight.value;
  return v;
}

double LogLinearForm::std_error() const {
  double var = 0.0;
  for (const auto& [poly, term] : mahler_terms_) {
    const double s = term.coefficient.get_d() * term.weight.std_error;
    var += s * s;
  }
  return std::sqrt(var);
}

std::string LogLinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rational& q, const std::string& symbol) {
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    first = false;
    const Rational magnitude = abs(q);
    if (symbol.empty()) {
      os << magnitude.get_str();
    } else {
      if (magnitude != 1) os << magnitude.get_str() << "*";
      os << symbol;
    }
  };
  if (constant_ != 0) emit(constant_, "");
  for (const auto& [p, q] : log_primes_) emit(q, "log(" + p.get_str() + ")");
  for (const auto& [poly, term] : mahler_terms_) emit(term.coefficient, "m(" + poly.to_string() + ")");
  if (first) os << "0";
  return os.str();
}

Estimate Estimate::combine(LogLinearForm exact_part, MonteCarloMean archimedean) {
  Estimate e;
  const double exact_se = exact_part.std_error();
  e.value = exact_part.value() + archimedean.value;
  e.std_error = std::sqrt(exact_se * exact_se + archimedean.std_error * archimedean.std_error);
  e.exact_part = std::move(exact_part);
  e.archimedean = archimedean;
  return e;
}

SamplerConfig weight_stream(const SamplerConfig& config, const NormalizedIrreducible& v) {
  return config.with_stream(place_tag(v));
}

const MahlerResult& WeightTable::weight(const NormalizedIrreducible& v) {
  auto it = cache_.find(v);
  if (it == cache_.end()) it = cache_.emplace(v, height_weight(v, weight_stream(config_, v))).first;
  return it->second;
}

FactoredEvaluator::FactoredEvaluator(const FactoredElement& gamma) {
  for (const auto& [place, e] : gamma.factors()) {
    if (place.is_prime()) {
      constant_ += e * log_abs_integer(place.prime_value());
    } else {
      polys_.emplace_back(&place.poly(), e);
    }
  }
}

std::optional<double> FactoredEvaluator::log_abs(std::span<const std::complex<double>> point) const {
  double v = constant_;
  for (const auto& [poly, e] : polys_) {
    const double magnitude = std::abs(poly->evaluate(point));
    if (!(magnitude >= kSingularMagnitude)) return std::nullopt;
    v += e * std::log(magnitude);
  }
  return v;
}

double log_abs_finite(const FactoredElement& gamma, const FinitePlace& place) {
  const int ord = ord_at(gamma, place.irreducible);
  return ord == 0 ? 0.0 : -place.weight.value * ord;
}

std::optional<double> log_abs_arch(const FactoredElement& gamma, const ArchimedeanPlace& place) {
  if (auto b = gamma.variable_count(); b && *b != place.angles.size()) {
    throw DomainError("torus point has " + std::to_string(place.angles.size()) + " coordinates, element needs " +
                      std::to_string(*b));
  }
  return FactoredEvaluator(gamma).log_abs(place.point());
}

std::size_t torus_dimension(std::span<const FactoredElement> gammas) {
  std::optional<std::size_t> b;
  for (const auto& g : gammas) {
    if (auto v = g.variable_count()) {
      if (b && *b != *v) throw InvalidInput("elements live over different numbers of variables");
      b = v;
    }
  }
  return b.value_or(0);
}

Estimate size(std::span<const FactoredElement> gammas, const SamplerConfig& config) {
  if (gammas.empty()) throw InvalidInput("size needs at least one coordinate");
  config.validate();
  const std::size_t b = torus_dimension(gammas);

  std::set<NormalizedIrreducible> places;
  for (const auto& g : gammas) {
    for (const auto& [v, e] : g.factors()) places.insert(v);
  }
  WeightTable weights(config);
  LogLinearForm finite;
  for (const auto& v : places) {
    int min_ord = ord_at(gammas.front(), v);
    for (const auto& g : gammas) min_ord = std::min(min_ord, ord_at(g, v));
    if (min_ord != 0) finite.add_place(v, Rational(-min_ord), weights.weight(v));
  }

  std::vector<FactoredEvaluator> evaluators(gammas.begin(), gammas.end());
  const auto arch = integrate_over_torus(config, b, [&](std::span<const double> angles) -> std::optional<double> {
    const auto p = torus_point(angles);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& ev : evaluators) {
      const auto v = ev.log_abs(p);
      if (!v) return std::nullopt;
      best = std::max(best, *v);
    }
    return best;
  });
  return Estimate::combine(std::move(finite), arch);
}

Estimate product_formula_defect(const FactoredElement& gamma, const SamplerConfig& config) {
  config.validate();
  const std::size_t b = gamma.variable_count().value_or(0);
  WeightTable weights(config);
  LogLinearForm finite;
  for (const auto& [v, e] : gamma.factors()) finite.add_place(v, Rational(-e), weights.weight(v));

  const FactoredEvaluator evaluator(gamma);
  const auto arch = integrate_over_torus(config, b, [&](std::span<const double> angles) {
    return evaluator.log_abs(torus_point(angles));
  });
  return Estimate::combine(std::move(finite), arch);
}

}  // namespace toricheight
