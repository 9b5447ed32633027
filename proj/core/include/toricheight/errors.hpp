// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace toricheight {

/// Malformed or inconsistent input data (bad shapes, non-normalized factors, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside the domain of an operation, e.g. a point outside the polytope.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root iteration did not converge, or Monte-Carlo sampling degenerated too often.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toricheight
