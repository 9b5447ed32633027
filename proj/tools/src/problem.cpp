// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "problem.hpp"

#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "toricheight/errors.hpp"

namespace heightcalc {

namespace {

using toricheight::InvalidInput;

std::string escape(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

nlohmann::json convert(const toml::node& node, const std::string& pointer, std::map<std::string, int>& lines) {
  if (node.source().begin.line > 0) lines[pointer] = static_cast<int>(node.source().begin.line);
  if (const auto* t = node.as_table()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, child] : *t) {
      out[std::string(key.str())] = convert(child, pointer + "/" + escape(key.str()), lines);
    }
    return out;
  }
  if (const auto* a = node.as_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < a->size(); ++i) out.push_back(convert(*a->get(i), pointer + "/" + std::to_string(i), lines));
    return out;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  throw InvalidInput(pointer + ": dates and times are not supported (line " +
                     std::to_string(node.source().begin.line) + ")");
}

int line_at_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

std::int64_t integer_field(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_number_integer()) throw InvalidInput(pointer + ": expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace

std::optional<int> ProblemFile::line_of(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    if (auto it = lines.find(p); it != lines.end()) return it->second;
    if (p.empty()) return std::nullopt;
    const auto slash = p.rfind('/');
    p = slash == std::string::npos ? std::string() : p.substr(0, slash);
  }
}

ProblemFile parse_problem(const std::string& text, const std::string& source, bool toml_syntax) {
  ProblemFile problem;
  problem.source = source;
  if (toml_syntax) {
    try {
      const auto table = toml::parse(text, std::string_view(source));
      problem.document = convert(table, "", problem.lines);
    } catch (const toml::parse_error& e) {
      throw InvalidInput(source + ":" + std::to_string(e.source().begin.line) + ": " + std::string(e.description()));
    }
  } else {
    try {
      problem.document = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput(source + ":" + std::to_string(line_at_offset(text, e.byte)) + ": " + e.what());
    }
  }
  if (!problem.document.is_object()) throw InvalidInput(source + ": top level must be a table");
  return problem;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return parse_problem(buffer.str(), path, !is_json);
}

std::size_t base_dimension(const ProblemFile& problem) {
  if (!problem.document.contains("base_dimension")) throw InvalidInput("/base_dimension: missing");
  const auto b = integer_field(problem.document["base_dimension"], "/base_dimension");
  if (b < 0 || b > 16) throw InvalidInput("/base_dimension: must lie in [0, 16]");
  return static_cast<std::size_t>(b);
}

toricheight::SamplerConfig sampler_from_problem(const ProblemFile& problem) {
  toricheight::SamplerConfig config;
  if (!problem.document.contains("sampler")) return config;
  const auto& s = problem.document["sampler"];
  if (!s.is_object()) throw InvalidInput("/sampler: expected a table");
  for (const auto& [key, value] : s.items()) {
    const std::string pointer = "/sampler/" + key;
    if (key == "samples") {
      config.samples = integer_field(value, pointer);
    } else if (key == "seed") {
      const auto seed = integer_field(value, pointer);
      if (seed < 0) throw InvalidInput(pointer + ": must be non-negative");
      config.seed = static_cast<std::uint64_t>(seed);
    } else if (key == "batches") {
      config.batches = integer_field(value, pointer);
    } else if (key == "kind") {
      if (!value.is_string()) throw InvalidInput(pointer + ": expected a string");
      try {
        config.kind = toricheight::sampler_kind_from_string(value.get<std::string>());
      } catch (const InvalidInput& e) {
        throw InvalidInput(pointer + ": " + e.what());
      }
    } else if (key == "threads") {
      const auto t = integer_field(value, pointer);
      if (t < 0) throw InvalidInput(pointer + ": must be non-negative");
      config.threads = static_cast<unsigned>(t);
    } else {
      throw InvalidInput(pointer + ": unknown field");
    }
  }
  return config;
}

}  // namespace heightcalc
