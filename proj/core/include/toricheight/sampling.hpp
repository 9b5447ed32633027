// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toricheight {

enum class SamplerKind {
  plain,    ///< independent uniform points
  lattice,  ///< rank-1 lattice per batch, randomly shifted
};

std::string to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(const std::string& name);

/// Monte-Carlo settings for integrals over the compact torus (S^1)^b with Haar measure.
struct SamplerConfig {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  /// The samples are split into this many equal batches; the standard error is
  /// the spread of the batch means.
  std::int64_t batches = 20;
  SamplerKind kind = SamplerKind::lattice;
  /// Worker threads, 0 for hardware concurrency. Results never depend on it.
  unsigned threads = 0;

  /// Throws InvalidInput unless samples, batches > 0 and batches divides samples.
  void validate() const;
  /// Same settings with a seed derived from (seed, tag), for statistically independent streams.
  SamplerConfig with_stream(std::uint64_t tag) const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;
/// Uniform double in [0, 1) from a counter-based stream.
double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t coordinate) noexcept;

/// Deterministic point generator: point (batch, index) depends on nothing else.
class TorusSampler {
 public:
  TorusSampler(const SamplerConfig& config, std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  std::int64_t batch_size() const noexcept { return batch_size_; }

  /// Angles in [0, 1); the torus point is exp(2 pi i angle) coordinatewise.
  void point(std::int64_t batch, std::int64_t index, std::span<double> angles) const;
  /// Replacement point for a rejected sample.
  void redraw(std::int64_t batch, std::int64_t index, std::uint32_t attempt, std::span<double> angles) const;

  std::span<const std::int64_t> generating_vector() const noexcept { return generator_; }

 private:
  SamplerConfig config_;
  std::size_t dimension_;
  std::int64_t batch_size_;
  std::vector<std::int64_t> generator_;
};

struct MonteCarloMean {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t rejected = 0;
};

/// Returns nullopt to reject a sample (e.g. evaluation too close to a zero); it is then redrawn.
using TorusIntegrand = std::function<std::optional<double>(std::span<const double> angles)>;

/// Batched (quasi-)Monte-Carlo mean of `integrand` over the Haar measure of the torus.
///
/// Throws NumericalFailure when more than `max_rejected_fraction` of the samples
/// are rejected, or a single sample cannot be redrawn. A dimension-0 torus is a
/// point: the integrand is evaluated once. A constant integrand yields exactly
/// that constant with std_error 0.
MonteCarloMean integrate_over_torus(const SamplerConfig& config, std::size_t dimension,
                                    const TorusIntegrand& integrand, double max_rejected_fraction = 0.01);

/// Vector-valued variant: every component is averaged over the same sample points.
/// The integrand writes `components` values into `out`, or returns false to reject.
using TorusVectorIntegrand = std::function<bool(std::span<const double> angles, std::span<double> out)>;

std::vector<MonteCarloMean> integrate_over_torus(const SamplerConfig& config, std::size_t dimension,
                                                 std::size_t components, const TorusVectorIntegrand& integrand,
                                                 double max_rejected_fraction = 0.01);

}  // namespace toricheight
