// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "toricheight/factored.hpp"
#include "toricheight/polynomial.hpp"
#include "toricheight/sampling.hpp"

namespace toricheight {

enum class MahlerMethod { jensen_exact, mc_jensen_reduced, mc_plain };

std::string to_string(MahlerMethod method);

/// Logarithmic Mahler measure m(P) = integral of log|P| over the unit torus.
struct MahlerResult {
  double value = 0.0;
  double std_error = 0.0;
  MahlerMethod method = MahlerMethod::jensen_exact;
  std::int64_t samples_used = 0;
  std::int64_t rejected_samples = 0;
};

/// Jensen's formula on the numerically computed roots. `poly` may have any
/// variable count as long as at most one variable actually occurs.
MahlerResult mahler_univariate(const IntPolynomial& poly);

/// (Quasi-)Monte-Carlo estimate. With `reduce_variable` set (and of positive
/// degree), each sample fixes the other angles and integrates the reduced
/// variable exactly through Jensen's formula; otherwise log|poly| is averaged.
/// Only variables that occur in `poly` are sampled.
MahlerResult mahler_mc(const IntPolynomial& poly, const SamplerConfig& config,
                       std::optional<std::size_t> reduce_variable);

/// Variable of highest degree (lowest index on ties); nullopt for constants.
std::optional<std::size_t> default_reduction_variable(const IntPolynomial& poly);

/// log|n| for a nonzero integer of any size.
double log_abs_integer(const Integer& n);

/// Weight h(V) of a finite place: log p for a prime, m(P_V) otherwise.
MahlerResult height_weight(const NormalizedIrreducible& v, const SamplerConfig& config);

}  // namespace toricheight
