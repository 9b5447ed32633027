// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "toricheight/errors.hpp"

namespace toricheight {

namespace {

constexpr std::uint32_t kMaxRedraws = 64;

__extension__ typedef __int128 Wide;

// Additive-recurrence constants 1/phi_d^k, with phi_d the positive root of x^{d+1} = x + 1.
std::vector<double> kronecker_constants(std::size_t dimension) {
  double phi = 2.0;
  for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dimension + 1));
  std::vector<double> alpha(dimension);
  double p = 1.0;
  for (std::size_t k = 0; k < dimension; ++k) {
    p /= phi;
    alpha[k] = p - std::floor(p);
  }
  return alpha;
}

struct BatchResult {
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations (only used when batches == 1)
};

}  // namespace

std::string to_string(SamplerKind kind) { return kind == SamplerKind::plain ? "plain" : "lattice"; }

SamplerKind sampler_kind_from_string(const std::string& name) {
  if (name == "plain") return SamplerKind::plain;
  if (name == "lattice") return SamplerKind::lattice;
  throw InvalidInput("unknown sampler kind '" + name + "' (expected plain or lattice)");
}

void SamplerConfig::validate() const {
  if (samples <= 0) throw InvalidInput("samples must be positive");
  if (batches <= 0) throw InvalidInput("batches must be positive");
  if (samples % batches != 0) {
    throw InvalidInput("batches (" + std::to_string(batches) + ") must divide samples (" + std::to_string(samples) + ")");
  }
}

SamplerConfig SamplerConfig::with_stream(std::uint64_t tag) const {
  SamplerConfig out = *this;
  out.seed = mix64(seed ^ mix64(tag + 0x632be59bd9b4e019ULL));
  return out;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t coordinate) noexcept {
  const std::uint64_t h = mix64(mix64(seed ^ mix64(counter)) + coordinate * 0xd1b54a32d192ed03ULL);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

TorusSampler::TorusSampler(const SamplerConfig& config, std::size_t dimension)
    : config_(config), dimension_(dimension) {
  config_.validate();
  batch_size_ = config_.samples / config_.batches;
  if (config_.kind == SamplerKind::lattice && dimension_ > 0) {
    const auto alpha = kronecker_constants(dimension_);
    generator_.resize(dimension_);
    for (std::size_t k = 0; k < dimension_; ++k) {
      auto g = static_cast<std::int64_t>(std::llround(alpha[k] * static_cast<double>(batch_size_)));
      g = std::max<std::int64_t>(g, 1);
      while (batch_size_ > 1 && std::gcd(g, batch_size_) != 1) ++g;
      generator_[k] = g % std::max<std::int64_t>(batch_size_, 1);
      if (generator_[k] == 0) generator_[k] = 1;
    }
  }
}

void TorusSampler::point(std::int64_t batch, std::int64_t index, std::span<double> angles) const {
  if (config_.kind == SamplerKind::plain) {
    const auto counter = static_cast<std::uint64_t>(batch * batch_size_ + index);
    for (std::size_t k = 0; k < dimension_; ++k) angles[k] = counter_uniform(config_.seed, counter, k);
    return;
  }
  const double n = static_cast<double>(batch_size_);
  for (std::size_t k = 0; k < dimension_; ++k) {
    const double shift = counter_uniform(config_.seed ^ 0x5851f42d4c957f2dULL, static_cast<std::uint64_t>(batch), k);
    const auto residue = static_cast<double>((static_cast<Wide>(index) * generator_[k]) % batch_size_);
    double a = residue / n + shift;
    a -= std::floor(a);
    angles[k] = a < 1.0 ? a : 0.0;
  }
}

void TorusSampler::redraw(std::int64_t batch, std::int64_t index, std::uint32_t attempt,
                          std::span<double> angles) const {
  const auto counter = static_cast<std::uint64_t>(batch * batch_size_ + index);
  const std::uint64_t stream = mix64(config_.seed ^ 0xa0761d6478bd642fULL) + attempt;
  for (std::size_t k = 0; k < dimension_; ++k) angles[k] = counter_uniform(stream, counter, k);
}

std::vector<MonteCarloMean> integrate_over_torus(const SamplerConfig& config, std::size_t dimension,
                                                 std::size_t components, const TorusVectorIntegrand& integrand,
                                                 double max_rejected_fraction) {
  config.validate();
  std::vector<MonteCarloMean> results(components);
  for (auto& r : results) r.samples = config.samples;
  if (dimension == 0) {
    std::vector<double> v(components);
    if (!integrand({}, v)) throw NumericalFailure("integrand rejected the only point of a zero-dimensional torus");
    for (std::size_t c = 0; c < components; ++c) results[c].value = v[c];
    return results;
  }

  const TorusSampler sampler(config, dimension);
  const std::int64_t batches = config.batches;
  const std::int64_t n = sampler.batch_size();
  // Row b holds the batch-b statistics of every component.
  std::vector<BatchResult> per_batch(static_cast<std::size_t>(batches) * components);
  std::vector<std::int64_t> rejected(static_cast<std::size_t>(batches), 0);

  auto run_batch = [&](std::int64_t b) {
    std::vector<double> angles(dimension);
    std::vector<double> v(components);
    std::vector<double> reference(components, 0.0), deviation_sum(components, 0.0), welford_mean(components, 0.0);
    std::vector<double> m2(components, 0.0);
    std::int64_t batch_rejected = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      sampler.point(b, i, angles);
      bool ok = integrand(angles, v);
      for (std::uint32_t attempt = 0; !ok; ++attempt) {
        if (attempt >= kMaxRedraws) throw NumericalFailure("sample could not be redrawn away from a singularity");
        ++batch_rejected;
        sampler.redraw(b, i, attempt, angles);
        ok = integrand(angles, v);
      }
      for (std::size_t c = 0; c < components; ++c) {
        if (i == 0) reference[c] = v[c];
        const double d = v[c] - reference[c];
        deviation_sum[c] += d;
        const double delta = d - welford_mean[c];
        welford_mean[c] += delta / static_cast<double>(i + 1);
        m2[c] += delta * (d - welford_mean[c]);
      }
    }
    for (std::size_t c = 0; c < components; ++c) {
      auto& out = per_batch[static_cast<std::size_t>(b) * components + c];
      out.mean = reference[c] + deviation_sum[c] / static_cast<double>(n);
      out.m2 = m2[c];
    }
    rejected[static_cast<std::size_t>(b)] = batch_rejected;
  };

  unsigned workers = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, batches));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::int64_t b = w; b < batches; b += workers) run_batch(b);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::int64_t total_rejected = 0;
  for (auto r : rejected) total_rejected += r;
  if (static_cast<double>(total_rejected) > max_rejected_fraction * static_cast<double>(config.samples)) {
    throw NumericalFailure("persistent degeneration: " + std::to_string(total_rejected) + " of " +
                           std::to_string(config.samples) + " samples rejected");
  }

  for (std::size_t c = 0; c < components; ++c) {
    auto& result = results[c];
    result.rejected = total_rejected;
    auto batch = [&](std::int64_t b) -> const BatchResult& {
      return per_batch[static_cast<std::size_t>(b) * components + c];
    };
    const double reference = batch(0).mean;
    double deviation_sum = 0.0;
    for (std::int64_t b = 0; b < batches; ++b) deviation_sum += batch(b).mean - reference;
    result.value = reference + deviation_sum / static_cast<double>(batches);

    if (batches == 1) {
      const double variance = n > 1 ? batch(0).m2 / static_cast<double>(n - 1) : 0.0;
      result.std_error = std::sqrt(variance / static_cast<double>(n));
    } else {
      double ss = 0.0;
      for (std::int64_t b = 0; b < batches; ++b) ss += (batch(b).mean - result.value) * (batch(b).mean - result.value);
      result.std_error = std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
    }
  }
  return results;
}

MonteCarloMean integrate_over_torus(const SamplerConfig& config, std::size_t dimension,
                                    const TorusIntegrand& integrand, double max_rejected_fraction) {
  const TorusVectorIntegrand wrapped = [&](std::span<const double> angles, std::span<double> out) {
    const auto v = integrand(angles);
    if (!v) return false;
    out[0] = *v;
    return true;
  };
  return integrate_over_torus(config, dimension, 1, wrapped, max_rejected_fraction).front();
}

}  // namespace toricheight
