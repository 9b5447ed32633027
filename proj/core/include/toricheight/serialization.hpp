// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "toricheight/factored.hpp"
#include "toricheight/polynomial.hpp"
#include "toricheight/roof.hpp"

namespace toricheight {

// JSON forms. Polynomials are maps from comma-joined exponent tuples to integer
// coefficients ({"0": -2, "1": 1} is z1 - 2); factored elements are
// {"sign": 1, "factors": [{"kind": "prime", "p": 2, "exp": -1}, {"kind": "poly", "terms": {...}, "exp": 3}]}.
// Integers too large for 64 bits are written as decimal strings. Parse errors
// throw InvalidInput prefixed by `path`, a JSON pointer to the offending value.

nlohmann::json integer_to_json(const Integer& n);
Integer integer_from_json(const nlohmann::json& j, const std::string& path);

/// {"num": "...", "den": "..."}
nlohmann::json rational_to_json(const Rational& q);

nlohmann::json polynomial_to_json(const IntPolynomial& poly);
IntPolynomial polynomial_from_json(const nlohmann::json& j, std::size_t variables, const std::string& path);

nlohmann::json factored_to_json(const FactoredElement& gamma);
/// Also accepts a bare nonzero integer as shorthand.
FactoredElement factored_from_json(const nlohmann::json& j, std::size_t variables, const std::string& path);

LatticePoint lattice_point_from_json(const nlohmann::json& j, std::size_t dimension, const std::string& path);

}  // namespace toricheight
