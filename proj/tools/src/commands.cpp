// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>

#include "toricheight/errors.hpp"
#include "toricheight/height.hpp"
#include "toricheight/mahler.hpp"
#include "toricheight/places.hpp"
#include "toricheight/serialization.hpp"

namespace heightcalc {

namespace th = toricheight;
using nlohmann::json;
using th::InvalidInput;

namespace {

const json& field(const json& doc, const std::string& key, const std::string& pointer) {
  if (!doc.is_object() || !doc.contains(key)) throw InvalidInput(pointer + "/" + key + ": missing");
  return doc.at(key);
}

const json& array_field(const json& doc, const std::string& key, const std::string& pointer) {
  const auto& a = field(doc, key, pointer);
  if (!a.is_array()) throw InvalidInput(pointer + "/" + key + ": expected an array");
  return a;
}

th::Rational rational_from_json(const json& j, const std::string& pointer) {
  if (j.is_number_integer()) return th::Rational(th::integer_from_json(j, pointer));
  if (j.is_string()) {
    th::Rational q;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
      throw InvalidInput(pointer + ": '" + s + "' is not a rational number like \"3/4\"");
    }
    q.canonicalize();
    return q;
  }
  throw InvalidInput(pointer + ": expected an integer or a rational string");
}

std::vector<th::FactoredElement> factored_list(const json& array, std::size_t b, const std::string& pointer) {
  std::vector<th::FactoredElement> out;
  for (std::size_t i = 0; i < array.size(); ++i) {
    out.push_back(th::factored_from_json(array[i], b, pointer + "/" + std::to_string(i)));
  }
  return out;
}

th::SubtorusData subtorus_from(const ProblemFile& problem) {
  const std::size_t b = base_dimension(problem);
  const auto& s = field(problem.document, "subtorus", "");
  const auto& exps = array_field(s, "exponents", "/subtorus");
  if (exps.empty() || !exps[0].is_array()) throw InvalidInput("/subtorus/exponents: expected a nonempty array of points");
  const std::size_t n = exps[0].size();
  std::vector<th::LatticePoint> points;
  for (std::size_t j = 0; j < exps.size(); ++j) {
    points.push_back(th::lattice_point_from_json(exps[j], n, "/subtorus/exponents/" + std::to_string(j)));
  }
  const auto coefficients = factored_list(array_field(s, "coefficients", "/subtorus"), b, "/subtorus/coefficients");
  try {
    return th::SubtorusData(b, th::LatticePointSet(n, std::move(points)), coefficients);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("/subtorus: ") + e.what());
  } catch (const th::DomainError& e) {
    throw InvalidInput(std::string("/subtorus/exponents: ") + e.what());
  }
}

json exact_part_json(const th::LogLinearForm& form) {
  json primes = json::array();
  for (const auto& [p, q] : form.log_primes()) {
    primes.push_back({{"p", p.get_str()}, {"coefficient", th::rational_to_json(q)}});
  }
  json mahler = json::array();
  for (const auto& [poly, term] : form.mahler_terms()) {
    mahler.push_back({{"polynomial", poly.to_string()},
                      {"terms", th::polynomial_to_json(poly)},
                      {"coefficient", th::rational_to_json(term.coefficient)},
                      {"weight", term.weight.value},
                      {"weight_std_error", term.weight.std_error},
                      {"weight_method", th::to_string(term.weight.method)}});
  }
  return {{"value", form.value()},
          {"std_error", form.std_error()},
          {"symbolic", form.to_string()},
          {"constant", th::rational_to_json(form.constant())},
          {"log_primes", primes},
          {"mahler_terms", mahler}};
}

json form_decomposition(const th::LogLinearForm& form) {
  json out = json::array();
  for (const auto& [p, q] : form.log_primes()) {
    const double w = th::log_abs_integer(p);
    out.push_back({{"place", p.get_str()},
                   {"kind", "prime"},
                   {"coefficient", th::rational_to_json(q)},
                   {"weight", w},
                   {"weight_std_error", 0.0},
                   {"contribution", q.get_d() * w}});
  }
  for (const auto& [poly, term] : form.mahler_terms()) {
    out.push_back({{"place", poly.to_string()},
                   {"kind", "poly"},
                   {"coefficient", th::rational_to_json(term.coefficient)},
                   {"weight", term.weight.value},
                   {"weight_std_error", term.weight.std_error},
                   {"contribution", term.coefficient.get_d() * term.weight.value}});
  }
  return out;
}

json mean_json(const th::MonteCarloMean& m) {
  return {{"value", m.value}, {"std_error", m.std_error}, {"samples", m.samples}, {"rejected_samples", m.rejected}};
}

json estimate_report(const th::Estimate& e) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"exact_part", exact_part_json(e.exact_part)},
          {"decomposition", form_decomposition(e.exact_part)},
          {"archimedean", mean_json(e.archimedean)},
          {"rejected_samples", e.archimedean.rejected}};
}

json height_report_json(const th::HeightReport& r) {
  json places = json::array();
  for (const auto& rec : r.finite_part) {
    places.push_back({{"place", rec.place.to_string()},
                      {"kind", rec.place.is_prime() ? "prime" : "poly"},
                      {"roof_integral", th::rational_to_json(rec.roof_integral)},
                      {"weight", rec.weight.value},
                      {"weight_std_error", rec.weight.std_error},
                      {"weight_method", th::to_string(rec.weight.method)},
                      {"contribution", r.factorial_normalizer.get_d() * rec.weight.value * rec.roof_integral.get_d()}});
  }
  return {{"value", r.total},
          {"std_error", r.std_error},
          {"exact_part", exact_part_json(r.exact_part())},
          {"decomposition", places},
          {"archimedean", mean_json(r.archimedean)},
          {"factorial_normalizer", r.factorial_normalizer.get_str()},
          {"degree", th::rational_to_json(r.degree)},
          {"rejected_samples", r.archimedean.rejected}};
}

json run_mahler(const ProblemFile& problem, const th::SamplerConfig& config) {
  const std::size_t b = base_dimension(problem);
  const auto poly = th::polynomial_from_json(field(problem.document, "polynomial", ""), b, "/polynomial");
  std::string method = "auto";
  if (problem.document.contains("method")) {
    if (!problem.document["method"].is_string()) throw InvalidInput("/method: expected a string");
    method = problem.document["method"].get<std::string>();
  }
  std::optional<std::size_t> reduce;
  if (problem.document.contains("reduce_variable")) {
    const auto& v = problem.document["reduce_variable"];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > static_cast<std::int64_t>(b)) {
      throw InvalidInput("/reduce_variable: expected a variable index in 1.." + std::to_string(b));
    }
    reduce = static_cast<std::size_t>(v.get<std::int64_t>() - 1);
  }
  th::MahlerResult result;
  if (method == "auto") {
    result = poly.support().size() <= 1 ? th::mahler_univariate(poly)
                                        : th::mahler_mc(poly, config, reduce ? reduce : th::default_reduction_variable(poly));
  } else if (method == "jensen-exact") {
    try {
      result = th::mahler_univariate(poly);
    } catch (const InvalidInput& e) {
      throw InvalidInput(std::string("/polynomial: ") + e.what());
    }
  } else if (method == "mc-plain") {
    result = th::mahler_mc(poly, config, std::nullopt);
  } else if (method == "mc-jensen-reduced") {
    result = th::mahler_mc(poly, config, reduce ? reduce : th::default_reduction_variable(poly));
  } else {
    throw InvalidInput("/method: unknown method '" + method + "' (auto, jensen-exact, mc-plain, mc-jensen-reduced)");
  }
  return {{"value", result.value},
          {"std_error", result.std_error},
          {"method", th::to_string(result.method)},
          {"polynomial", poly.to_string()},
          {"exact_part", exact_part_json({})},
          {"decomposition", json::array()},
          {"samples_used", result.samples_used},
          {"rejected_samples", result.rejected_samples}};
}

json run_size(const ProblemFile& problem, const th::SamplerConfig& config) {
  const std::size_t b = base_dimension(problem);
  const auto& coords = array_field(problem.document, "coordinates", "");
  std::vector<std::optional<th::FactoredElement>> gammas;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& c = coords[i];
    if (c.is_number_integer() && c.get<std::int64_t>() == 0) {
      gammas.emplace_back(std::nullopt);
    } else {
      gammas.emplace_back(th::factored_from_json(c, b, "/coordinates/" + std::to_string(i)));
    }
  }
  try {
    return estimate_report(th::point_height(gammas, config));
  } catch (const InvalidInput& e) {
    const std::string what = e.what();
    if (what.rfind("/", 0) == 0) throw;
    throw InvalidInput("/coordinates: " + what);
  }
}

json run_product_check(const ProblemFile& problem, const th::SamplerConfig& config) {
  const auto gamma = th::factored_from_json(field(problem.document, "element", ""), base_dimension(problem), "/element");
  auto report = estimate_report(th::product_formula_defect(gamma, config));
  report["element"] = gamma.to_string();
  return report;
}

json run_height(const ProblemFile& problem, const th::SamplerConfig& config) {
  return height_report_json(th::height_translated_subtorus(subtorus_from(problem), config));
}

json run_n0(const ProblemFile& problem, const th::SamplerConfig& config) {
  const auto fs = factored_list(array_field(problem.document, "coefficients", ""), base_dimension(problem), "/coefficients");
  try {
    return estimate_report(th::n0_height(fs, config));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("/coefficients: ") + e.what());
  }
}

std::vector<th::Rational> point_from(const json& doc, const std::string& pointer, std::size_t n) {
  const auto& p = array_field(doc, "point", pointer);
  if (p.size() != n) {
    throw InvalidInput(pointer + "/point: has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n));
  }
  std::vector<th::Rational> x;
  for (std::size_t i = 0; i < p.size(); ++i) x.push_back(rational_from_json(p[i], pointer + "/point/" + std::to_string(i)));
  return x;
}

json run_roof_eval(const ProblemFile& problem, const th::SamplerConfig& config) {
  if (problem.document.contains("roof")) {
    // A single exact roof: {points, values, point}.
    const auto& roof = problem.document["roof"];
    const auto& pts = array_field(roof, "points", "/roof");
    if (pts.empty() || !pts[0].is_array()) throw InvalidInput("/roof/points: expected a nonempty array of points");
    const std::size_t n = pts[0].size();
    std::vector<th::LatticePoint> points;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      points.push_back(th::lattice_point_from_json(pts[j], n, "/roof/points/" + std::to_string(j)));
    }
    const auto& vals = array_field(roof, "values", "/roof");
    std::vector<th::Rational> values;
    for (std::size_t j = 0; j < vals.size(); ++j) values.push_back(rational_from_json(vals[j], "/roof/values/" + std::to_string(j)));
    const auto x = point_from(roof, "/roof", n);
    std::shared_ptr<const th::PointConfiguration> domain;
    try {
      domain = std::make_shared<const th::PointConfiguration>(n, std::move(points));
    } catch (const th::DomainError& e) {
      throw InvalidInput(std::string("/roof/points: ") + e.what());
    }
    std::optional<th::RoofFunction<th::Rational>> envelope;
    try {
      envelope.emplace(th::upper_envelope<th::Rational>(domain, std::move(values)));
    } catch (const InvalidInput& e) {
      throw InvalidInput(std::string("/roof/values: ") + e.what());
    }
    th::Rational v;
    try {
      v = (*envelope)(x);
    } catch (const th::DomainError& e) {
      throw th::DomainError(std::string("/roof/point: ") + e.what());
    }
    th::LogLinearForm form;
    form.add_constant(v);
    return {{"value", v.get_d()},
            {"std_error", 0.0},
            {"exact_part", exact_part_json(form)},
            {"decomposition", json::array()},
            {"integral", th::rational_to_json(envelope->integral())},
            {"rejected_samples", 0}};
  }
  const auto data = subtorus_from(problem);
  const auto x = point_from(problem.document, "", data.torus_dimension());
  try {
    return estimate_report(th::global_roof_eval(data, x, config));
  } catch (const th::DomainError& e) {
    throw th::DomainError(std::string("/point: ") + e.what());
  }
}

json run_fubini(const ProblemFile& problem, const th::SamplerConfig& config, const TaskOptions& options) {
  std::int64_t grid = 8;
  if (problem.document.contains("grid")) {
    const auto& g = problem.document["grid"];
    if (!g.is_number_integer()) throw InvalidInput("/grid: expected an integer");
    grid = g.get<std::int64_t>();
  }
  if (options.grid) grid = *options.grid;
  if (grid < 1) throw InvalidInput("--grid: must be at least 1");
  const auto f = th::fubini_check(subtorus_from(problem), grid, config);
  auto report = height_report_json(f.height);
  report["value"] = f.difference;
  report["std_error"] = f.std_error_difference;
  report["fubini"] = {{"via_roof_integrals", f.via_roof_integrals},
                      {"std_error_roof_integrals", f.std_error_roof_integrals},
                      {"via_global_roof", f.via_global_roof},
                      {"std_error_global_roof", f.std_error_global_roof},
                      {"difference", f.difference},
                      {"std_error_difference", f.std_error_difference},
                      {"grid_bound", f.grid_bound},
                      {"grid", f.resolution},
                      {"nodes", f.nodes}};
  return report;
}

}  // namespace

json run_task(const std::string& task, const ProblemFile& problem, const th::SamplerConfig& config,
              const TaskOptions& options) {
  if (problem.document.contains("task")) {
    const auto& t = problem.document["task"];
    if (!t.is_string() || t.get<std::string>() != task) {
      throw InvalidInput("/task: file is for task " + t.dump() + ", not '" + task + "'");
    }
  }
  json report;
  if (task == "mahler") {
    report = run_mahler(problem, config);
  } else if (task == "size") {
    report = run_size(problem, config);
  } else if (task == "height") {
    report = run_height(problem, config);
  } else if (task == "product-check") {
    report = run_product_check(problem, config);
  } else if (task == "roof-eval") {
    report = run_roof_eval(problem, config);
  } else if (task == "fubini-check") {
    report = run_fubini(problem, config, options);
  } else if (task == "n0-height") {
    report = run_n0(problem, config);
  } else {
    throw InvalidInput("unknown task '" + task + "'");
  }
  report["task"] = task;
  report["samples"] = config.samples;
  report["seed"] = config.seed;
  report["batches"] = config.batches;
  report["sampler"] = th::to_string(config.kind);
  return report;
}

}  // namespace heightcalc
