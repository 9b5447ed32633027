// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/height.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "toricheight/errors.hpp"

namespace toricheight {

namespace {

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return f;
}

std::size_t sampling_dimension(const SubtorusData& data) { return torus_dimension(data.coefficients()); }

std::vector<FactoredEvaluator> evaluators(const SubtorusData& data) {
  return {data.coefficients().begin(), data.coefficients().end()};
}

std::optional<std::vector<double>> log_coefficients(const std::vector<FactoredEvaluator>& evs,
                                                    std::span<const std::complex<double>> point) {
  std::vector<double> c(evs.size());
  for (std::size_t j = 0; j < evs.size(); ++j) {
    const auto v = evs[j].log_abs(point);
    if (!v) return std::nullopt;
    c[j] = *v;
  }
  return c;
}

// Variance of the finite part from the Monte-Carlo place weights.
double finite_variance(const std::vector<FinitePlaceRecord>& records) {
  double s = 0.0;
  for (const auto& r : records) {
    const double e = std::abs(r.roof_integral.get_d()) * r.weight.std_error;
    s += e * e;
  }
  return s;
}

HeightReport assemble(const SubtorusData& data, std::vector<FinitePlaceRecord> records, MonteCarloMean arch,
                      const SamplerConfig& config) {
  const std::size_t n = data.torus_dimension();
  HeightReport report;
  report.finite_part = std::move(records);
  report.archimedean = arch;
  report.factorial_normalizer = factorial(n + 1);
  report.degree = Rational(factorial(n)) * data.exponents().configuration()->volume();
  report.sampler = config;
  const double normalizer = report.factorial_normalizer.get_d();
  report.total = normalizer * (report.finite_value() + arch.value);
  report.std_error = normalizer * std::sqrt(finite_variance(report.finite_part) + arch.std_error * arch.std_error);
  return report;
}

std::vector<FinitePlaceRecord> weighted(const std::vector<FiniteRoof>& roofs, const SamplerConfig& config) {
  WeightTable weights(config);
  std::vector<FinitePlaceRecord> records;
  records.reserve(roofs.size());
  for (const auto& r : roofs) records.push_back({r.place, r.integral, weights.weight(r.place)});
  return records;
}

}  // namespace

SubtorusData::SubtorusData(std::size_t base_dimension, LatticePointSet exponents,
                           std::vector<FactoredElement> coefficients)
    : base_dimension_(base_dimension), exponents_(std::move(exponents)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != exponents_.size()) {
    throw InvalidInput("got " + std::to_string(coefficients_.size()) + " coefficients for " +
                       std::to_string(exponents_.size()) + " exponent vectors");
  }
  if (coefficients_.size() < exponents_.dimension() + 1) throw InvalidInput("need r >= n");
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    const auto vars = coefficients_[j].variable_count();
    if (vars && *vars != base_dimension_) {
      throw InvalidInput("coefficient " + std::to_string(j) + " has " + std::to_string(*vars) +
                         " variables, expected " + std::to_string(base_dimension_));
    }
  }
}

std::vector<FiniteRoof> finite_contribution(const SubtorusData& data) {
  std::set<NormalizedIrreducible> places;
  for (const auto& f : data.coefficients()) {
    for (const auto& [v, e] : f.factors()) places.insert(v);
  }
  std::vector<FiniteRoof> out;
  for (const auto& v : places) {
    std::vector<Rational> lifts;
    lifts.reserve(data.coefficients().size());
    for (const auto& f : data.coefficients()) lifts.emplace_back(-ord_at(f, v));
    auto roof = upper_envelope<Rational>(data.exponents(), std::move(lifts));
    Rational integral = roof.integral();
    out.push_back({v, std::move(roof), std::move(integral)});
  }
  return out;
}

std::optional<double> archimedean_roof_integral(const SubtorusData& data, std::span<const std::complex<double>> point) {
  const auto c = log_coefficients(evaluators(data), point);
  if (!c) return std::nullopt;
  return upper_envelope<double>(data.exponents(), *c).integral();
}

MonteCarloMean archimedean_contribution(const SubtorusData& data, const SamplerConfig& config) {
  const auto evs = evaluators(data);
  const auto& domain = data.exponents().configuration();
  return integrate_over_torus(config, sampling_dimension(data), [&](std::span<const double> angles) -> std::optional<double> {
    const auto c = log_coefficients(evs, torus_point(angles));
    if (!c) return std::nullopt;
    return upper_envelope<double>(domain, *c).integral();
  });
}

double HeightReport::finite_value() const {
  double s = 0.0;
  for (const auto& r : finite_part) s += r.weight.value * r.roof_integral.get_d();
  return s;
}

LogLinearForm HeightReport::exact_part() const {
  LogLinearForm form;
  for (const auto& r : finite_part) {
    if (sgn(r.roof_integral) != 0) form.add_place(r.place, r.roof_integral * Rational(factorial_normalizer), r.weight);
  }
  return form;
}

HeightReport height_translated_subtorus(const SubtorusData& data, const SamplerConfig& config) {
  config.validate();
  auto records = weighted(finite_contribution(data), config);
  return assemble(data, std::move(records), archimedean_contribution(data, config), config);
}

Estimate point_height(std::span<const std::optional<FactoredElement>> gammas, const SamplerConfig& config) {
  std::vector<FactoredElement> nonzero;
  for (const auto& g : gammas) {
    if (g) nonzero.push_back(*g);
  }
  if (nonzero.empty()) throw InvalidInput("all projective coordinates are zero");
  return size(nonzero, config);
}

Estimate n0_height(std::span<const FactoredElement> fs, const SamplerConfig& config) {
  if (fs.empty()) throw InvalidInput("n0 height needs at least one coefficient");
  std::set<NormalizedIrreducible> places;
  for (const auto& f : fs) {
    for (const auto& [v, e] : f.factors()) places.insert(v);
  }
  for (const auto& v : places) {
    int lowest = std::numeric_limits<int>::max();
    for (const auto& f : fs) lowest = std::min(lowest, ord_at(f, v));
    if (lowest != 0) throw InvalidInput("coefficients share the factor " + v.to_string());
  }
  return size(fs, config);
}

double n1_closed_form(const SubtorusData& data, std::span<const std::complex<double>> point) {
  const auto& m = data.exponents().points();
  const auto& f = data.coefficients();
  if (data.torus_dimension() != 1) throw InvalidInput("closed form needs a one-dimensional torus");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i][0] != static_cast<std::int64_t>(i)) throw InvalidInput("closed form needs exponents 0, 1, ..., r");
  }
  if (!f.front().is_one() || !f.back().is_one()) throw InvalidInput("closed form needs f_0 = f_r = 1");
  const auto c = log_coefficients(evaluators(data), point);
  if (!c) throw NumericalFailure("coefficient vanishes at the sample point");
  const std::size_t r = m.size() - 1;
  double total = 0.0;
  for (std::size_t i = 1; i < r; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t l = std::max(i, j + 1); l <= r; ++l) {
        const double span_len = static_cast<double>(l - j);
        const double v = static_cast<double>(l - i) / span_len * (*c)[j] + static_cast<double>(i - j) / span_len * (*c)[l];
        best = std::max(best, v);
      }
    }
    total += best;
  }
  return total;
}

Estimate global_roof_eval(const SubtorusData& data, std::span<const Rational> x, const SamplerConfig& config) {
  config.validate();
  const auto& domain = data.exponents().configuration();
  if (x.size() != domain->dimension()) throw DomainError("point has wrong dimension");
  // Exact membership test through the zero roof.
  (void)upper_envelope<Rational>(domain, std::vector<Rational>(domain->size(), Rational(0)))(x);

  WeightTable weights(config);
  LogLinearForm finite;
  for (const auto& fr : finite_contribution(data)) {
    const Rational v = fr.roof(x);
    if (sgn(v) != 0) finite.add_place(fr.place, v, weights.weight(fr.place));
  }
  std::vector<double> xd(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xd[i] = x[i].get_d();
  const auto evs = evaluators(data);
  const auto arch =
      integrate_over_torus(config, sampling_dimension(data), [&](std::span<const double> angles) -> std::optional<double> {
        const auto c = log_coefficients(evs, torus_point(angles));
        if (!c) return std::nullopt;
        return upper_envelope<double>(domain, *c).min_of_pieces(xd);
      });
  return Estimate::combine(std::move(finite), arch);
}

FubiniReport fubini_check(const SubtorusData& data, std::int64_t resolution, const SamplerConfig& config) {
  config.validate();
  const auto& domain = data.exponents().configuration();
  const std::size_t n = data.torus_dimension();
  const auto nodes = barycentric_grid_quadrature(*domain, resolution);
  const double mesh = barycentric_grid_mesh_size(*domain, resolution);

  std::vector<std::vector<double>> node_points;
  std::vector<double> node_weights;
  node_points.reserve(nodes.size());
  for (const auto& node : nodes) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = node.point[i].get_d();
    node_points.push_back(std::move(p));
    node_weights.push_back(node.weight.get_d());
  }

  const auto roofs = finite_contribution(data);
  auto records = weighted(roofs, config);
  double finite_grid = 0.0, finite_grid_var = 0.0, finite_lipschitz = 0.0, finite_diff_var = 0.0;
  for (std::size_t k = 0; k < roofs.size(); ++k) {
    Rational q = 0;
    for (const auto& node : nodes) q += node.weight * roofs[k].roof.min_of_pieces(node.point);
    const double w = records[k].weight.value;
    finite_grid += w * q.get_d();
    finite_grid_var += std::pow(std::abs(q.get_d()) * records[k].weight.std_error, 2);
    finite_lipschitz += w * roofs[k].roof.max_gradient_norm();
    const double e = std::abs(Rational(roofs[k].integral - q).get_d()) * records[k].weight.std_error;
    finite_diff_var += e * e;
  }

  // Components: roof integral, grid quadrature, their difference, gradient bound.
  const auto evs = evaluators(data);
  const auto means = integrate_over_torus(
      config, sampling_dimension(data), 4, [&](std::span<const double> angles, std::span<double> out) {
        const auto c = log_coefficients(evs, torus_point(angles));
        if (!c) return false;
        const auto roof = upper_envelope<double>(domain, *c);
        const double exact = roof.integral();
        double grid = 0.0;
        for (std::size_t k = 0; k < node_points.size(); ++k) grid += node_weights[k] * roof.min_of_pieces(node_points[k]);
        out[0] = exact;
        out[1] = grid;
        out[2] = exact - grid;
        out[3] = roof.max_gradient_norm();
        return true;
      });

  FubiniReport report;
  report.height = assemble(data, std::move(records), means[0], config);
  const double normalizer = report.height.factorial_normalizer.get_d();
  report.resolution = resolution;
  report.nodes = nodes.size();
  report.via_roof_integrals = report.height.total;
  report.std_error_roof_integrals = report.height.std_error;
  report.via_global_roof = normalizer * (finite_grid + means[1].value);
  report.std_error_global_roof = normalizer * std::sqrt(finite_grid_var + means[1].std_error * means[1].std_error);
  report.difference = report.via_roof_integrals - report.via_global_roof;
  report.std_error_difference = normalizer * std::sqrt(finite_diff_var + means[2].std_error * means[2].std_error);
  report.grid_bound = normalizer * domain->volume().get_d() * mesh * (finite_lipschitz + means[3].value);
  return report;
}

}  // namespace toricheight
