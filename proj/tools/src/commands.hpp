// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "problem.hpp"
#include "toricheight/sampling.hpp"

namespace heightcalc {

inline const std::vector<std::string> kTasks{"mahler",     "size",         "height",   "product-check",
                                             "roof-eval", "fubini-check", "n0-height"};

struct TaskOptions {
  std::optional<std::int64_t> grid;
};

/// Runs `task` on the problem payload. The report has no wall time yet.
nlohmann::json run_task(const std::string& task, const ProblemFile& problem, const toricheight::SamplerConfig& config,
                        const TaskOptions& options);

}  // namespace heightcalc
