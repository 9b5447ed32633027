// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI/CLI.hpp>

#include "commands.hpp"
#include "problem.hpp"
#include "toricheight/errors.hpp"

namespace heightcalc {

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    if (j.empty()) out += prefix + " = []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + " = " + j.dump() + "\n";
  }
}

// "/a/b: message" gains the source line of /a/b when the file recorded one.
std::string diagnostic(const ProblemFile* problem, const std::string& message) {
  if (!problem || message.empty() || message[0] != '/') return message;
  const auto colon = message.find(": ");
  const std::string pointer = message.substr(0, colon);
  const auto line = problem->line_of(pointer);
  return problem->source + (line ? ":" + std::to_string(*line) : std::string()) + ": " + message;
}

}  // namespace

std::string to_text(const nlohmann::json& report) {
  std::string out;
  flatten(report, "", out);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heights of translated subtori and Mahler measures over Q(z1, ..., zb)", "heightcalc"};
  app.require_subcommand(1);
  std::string input;
  std::optional<std::int64_t> samples, batches, grid;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sampler_kind;
  std::optional<unsigned> threads;
  std::string format = "json";

  for (const auto& task : kTasks) {
    auto* sub = app.add_subcommand(task, "run the " + task + " task");
    sub->add_option("--input", input, "problem file (.toml, or .json)")->required();
    sub->add_option("--samples", samples, "Monte-Carlo samples");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--batches", batches, "batches for the standard error");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--sampler", sampler_kind, "plain or lattice")->check(CLI::IsMember({"plain", "lattice"}));
    sub->add_option("--threads", threads, "worker threads (0: all cores); results do not depend on it");
    if (task == "fubini-check") sub->add_option("--grid", grid, "barycentric grid resolution per simplex");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  const std::string task = app.get_subcommands().front()->get_name();

  std::optional<ProblemFile> problem;
  try {
    const auto start = std::chrono::steady_clock::now();
    problem = load_problem(input);
    auto config = sampler_from_problem(*problem);
    if (samples) config.samples = *samples;
    if (seed) config.seed = *seed;
    if (batches) config.batches = *batches;
    if (sampler_kind) config.kind = toricheight::sampler_kind_from_string(*sampler_kind);
    if (threads) config.threads = *threads;
    config.validate();

    auto report = run_task(task, *problem, config, TaskOptions{grid});
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["wall_time_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    if (format == "json") {
      out << report.dump(2) << "\n";
    } else {
      out << to_text(report);
    }
    return kOk;
  } catch (const toricheight::NumericalFailure& e) {
    err << "heightcalc: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const toricheight::InvalidInput& e) {
    err << "heightcalc: invalid input: " << diagnostic(problem ? &*problem : nullptr, e.what()) << "\n";
    return kInvalidInput;
  } catch (const toricheight::DomainError& e) {
    err << "heightcalc: domain error: " << diagnostic(problem ? &*problem : nullptr, e.what()) << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "heightcalc: internal error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace heightcalc
