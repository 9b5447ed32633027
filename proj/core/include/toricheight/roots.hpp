// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace toricheight {

struct RootSolverOptions {
  /// Relative backward error |p(z)| / sum |a_k| |z|^k accepted for every root.
  double residual_tolerance = 1e-12;
  int max_iterations = 1000;
  int max_restarts = 4;
};

/// All complex roots, with multiplicity, of the polynomial with ascending
/// coefficients `coefficients` (Aberth-Ehrlich simultaneous iteration).
///
/// Trailing zero high-order coefficients are dropped. Throws InvalidInput for the
/// zero polynomial and NumericalFailure when no restart converges.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coefficients,
                                                   const RootSolverOptions& options = {});

/// log|a_d| + sum log+ |root| for ascending coefficients: the logarithmic Mahler
/// measure of a univariate polynomial, by Jensen's formula.
double jensen_log_measure(std::span<const std::complex<double>> coefficients,
                          const RootSolverOptions& options = {});

}  // namespace toricheight
