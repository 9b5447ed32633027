// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toricheight/errors.hpp"
#include "toricheight/sampling.hpp"

namespace toricheight {

namespace {

using cd = std::complex<double>;

// p(z), p'(z) and sum |a_k| |z|^k in one Horner pass.
struct HornerValue {
  cd value;
  cd derivative;
  double magnitude;
};

HornerValue horner_with_derivative(std::span<const cd> a, cd z) {
  cd p = 0.0;
  cd dp = 0.0;
  double mag = 0.0;
  const double r = std::abs(z);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
    mag = mag * r + std::abs(*it);
  }
  return {p, dp, mag};
}

bool accepted(const HornerValue& h, double tolerance) {
  return std::abs(h.value) <= tolerance * h.magnitude;
}

// Root radii bound used to place initial guesses on a circle.
double initial_radius(std::span<const cd> a) {
  const auto d = a.size() - 1;
  const double lead = std::abs(a[d]);
  double r = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double c = std::abs(a[k]);
    if (c > 0) r = std::max(r, std::pow(c / lead, 1.0 / static_cast<double>(d - k)));
  }
  return r > 0 ? r : 1.0;
}

bool aberth(std::span<const cd> a, std::vector<cd>& z, const RootSolverOptions& options) {
  const std::size_t d = z.size();
  std::vector<bool> done(d, false);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < d; ++k) {
      const auto h = horner_with_derivative(a, z[k]);
      if (accepted(h, options.residual_tolerance)) {
        done[k] = true;
        continue;
      }
      done[k] = false;
      all_done = false;
      if (h.derivative == cd(0.0)) {
        z[k] *= cd(1.0 + 1e-7, 1e-7);
        continue;
      }
      const cd ratio = h.value / h.derivative;
      cd repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) {
          const cd diff = z[k] - z[j];
          if (diff != cd(0.0)) repulsion += 1.0 / diff;
        }
      }
      const cd denom = 1.0 - ratio * repulsion;
      z[k] -= denom == cd(0.0) ? ratio : ratio / denom;
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag())) return false;
    }
    if (all_done) return true;
  }
  return std::all_of(done.begin(), done.end(), [](bool b) { return b; });
}

}  // namespace

std::vector<cd> polynomial_roots(std::span<const cd> coefficients, const RootSolverOptions& options) {
  std::size_t hi = coefficients.size();
  while (hi > 0 && coefficients[hi - 1] == cd(0.0)) --hi;
  if (hi == 0) throw InvalidInput("the zero polynomial has no well-defined roots");
  std::size_t lo = 0;
  while (coefficients[lo] == cd(0.0)) ++lo;

  std::vector<cd> roots(lo, cd(0.0));
  const std::span<const cd> a = coefficients.subspan(lo, hi - lo);
  const std::size_t d = a.size() - 1;
  if (d == 0) return roots;
  if (d == 1) {
    roots.push_back(-a[0] / a[1]);
    return roots;
  }

  const double radius = initial_radius(a);
  std::vector<cd> z(d);
  for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
    for (std::size_t k = 0; k < d; ++k) {
      double jitter = 0.0;
      double scale = 1.0;
      if (attempt > 0) {
        jitter = counter_uniform(0x243f6a8885a308d3ULL, static_cast<std::uint64_t>(attempt), k);
        scale = 0.5 + counter_uniform(0x13198a2e03707344ULL, static_cast<std::uint64_t>(attempt), k);
      }
      const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25 + jitter) / static_cast<double>(d) + 0.4;
      z[k] = std::polar(radius * scale, angle);
    }
    if (aberth(a, z, options)) {
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
  }
  throw NumericalFailure("root iteration did not converge for a degree " + std::to_string(d) + " polynomial");
}

double jensen_log_measure(std::span<const cd> coefficients, const RootSolverOptions& options) {
  std::size_t hi = coefficients.size();
  while (hi > 0 && coefficients[hi - 1] == cd(0.0)) --hi;
  if (hi == 0) throw InvalidInput("the zero polynomial has no Mahler measure");
  for (std::size_t k = 0; k < hi; ++k) {
    if (!std::isfinite(coefficients[k].real()) || !std::isfinite(coefficients[k].imag())) {
      throw NumericalFailure("polynomial coefficient outside double range");
    }
  }
  double value = std::log(std::abs(coefficients[hi - 1]));
  for (const auto& root : polynomial_roots(coefficients.first(hi), options)) {
    const double r = std::abs(root);
    if (r > 1.0) value += std::log(r);
  }
  if (!std::isfinite(value)) throw NumericalFailure("Mahler measure overflows double range");
  return value;
}

}  // namespace toricheight
