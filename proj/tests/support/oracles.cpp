// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace toricheight::testing {

namespace {

std::complex<double> poly_at(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> circle_point(double theta) { return std::polar(1.0, 2.0 * std::numbers::pi * theta); }

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

double circle_log_mean(const std::vector<std::complex<double>>& coefficients, int nodes) {
  double s = 0.0;
  for (int k = 0; k < nodes; ++k) s += std::log(std::abs(poly_at(coefficients, circle_point((k + 0.5) / nodes))));
  return s / nodes;
}

double smyth_oracle(int panels) {
  // |1 + e^{i phi}| = 2 cos(phi / 2) exceeds 1 exactly for |phi| < 2 pi / 3.
  const double edge = 2.0 * std::numbers::pi / 3.0;
  const double integral = simpson([](double phi) { return std::log(2.0 * std::cos(phi / 2.0)); }, -edge, edge, panels);
  return integral / (2.0 * std::numbers::pi);
}

double max_log_oracle(int panels) {
  // |e^{i phi} - 2|^2 = 5 - 4 cos(phi) is at least 4 exactly when cos(phi) <= 1/4.
  const double kink = std::acos(0.25);
  const double pi = std::numbers::pi;
  const double outer = simpson([](double phi) { return 0.5 * std::log(5.0 - 4.0 * std::cos(phi)); }, kink, 2.0 * pi - kink,
                               panels);
  const double inner = 2.0 * kink * std::log(2.0);
  return (outer + inner) / (2.0 * pi);
}

double circle_max_log_mean(const std::vector<std::vector<std::complex<double>>>& fs, int nodes) {
  double s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const auto z = circle_point((k + 0.5) / nodes);
    double best = -INFINITY;
    for (const auto& f : fs) best = std::max(best, std::log(std::abs(poly_at(f, z))));
    s += best;
  }
  return s / nodes;
}

}  // namespace toricheight::testing
