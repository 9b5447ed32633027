// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace heightcalc {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kNumericalFailure = 2 };

/// Entry point behind main(); args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One "key = value" line per scalar, values spelled exactly as in the JSON report.
std::string to_text(const nlohmann::json& report);

}  // namespace heightcalc
