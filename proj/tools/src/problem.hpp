// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "toricheight/sampling.hpp"

namespace heightcalc {

/// A parsed problem file. TOML documents are converted to JSON; `lines` maps
/// JSON pointers to the source line of the value (TOML only).
struct ProblemFile {
  std::string source;
  nlohmann::json document;
  std::map<std::string, int> lines;

  /// Line of the deepest recorded ancestor of `pointer`, if any.
  std::optional<int> line_of(const std::string& pointer) const;
};

/// Throws InvalidInput with "<source>:<line>: ..." for syntax errors.
ProblemFile load_problem(const std::string& path);
ProblemFile parse_problem(const std::string& text, const std::string& source, bool toml);

std::size_t base_dimension(const ProblemFile& problem);

/// The [sampler] table on top of library defaults.
toricheight::SamplerConfig sampler_from_problem(const ProblemFile& problem);

}  // namespace heightcalc
