// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations that share no code with the library.

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace toricheight::testing {

// Reference constants, computed offline with 30-digit mpmath quadrature.
inline constexpr double kSmythConstant = 0.323065947219450514;  // m(1 + z1 + z2)
inline constexpr double kMaxLog2AndLogZMinus2 = 0.852864326794325549526;  // mean of max(log 2, log|z - 2|)

/// Composite Simpson rule with `panels` (even) panels on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

/// Midpoint rule for the mean of log|P(e^{2 pi i theta})|, coefficients ascending.
double circle_log_mean(const std::vector<std::complex<double>>& coefficients, int nodes);

/// m(1 + z1 + z2) = mean over theta of log max(1, |1 + e^{2 pi i theta}|), by Simpson on the smooth piece.
double smyth_oracle(int panels);

/// Mean of max(log 2, log|e^{2 pi i theta} - 2|), split at the kinks.
double max_log_oracle(int panels);

/// Mean of max_l log|f_l(e^{2 pi i theta})| for univariate f_l, midpoint rule.
double circle_max_log_mean(const std::vector<std::vector<std::complex<double>>>& fs, int nodes);

}  // namespace toricheight::testing
