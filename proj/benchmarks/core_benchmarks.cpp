// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "toricheight/height.hpp"
#include "toricheight/mahler.hpp"
#include "toricheight/roof.hpp"
#include "toricheight/roots.hpp"

namespace {

using namespace toricheight;

IntPolynomial polynomial(std::size_t vars, std::initializer_list<std::pair<Exponents, long>> list) {
  IntPolynomial::TermMap map;
  for (const auto& [e, c] : list) map[e] = Integer(c);
  return IntPolynomial(vars, std::move(map));
}

SamplerConfig config(std::int64_t samples) {
  SamplerConfig c;
  c.samples = samples;
  c.batches = 20;
  c.threads = 1;
  return c;
}

// Lattice points of the box [0, k]^n.
std::vector<LatticePoint> box(std::size_t n, std::int64_t k) {
  std::vector<LatticePoint> out{LatticePoint(n, 0)};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t d = 0; d < n; ++d) {
      auto p = out[i];
      if (p[d] == k) continue;
      ++p[d];
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

void BM_AberthRoots(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::vector<std::complex<double>> a(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto& c : a) c = dist(rng);
  a.back() = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(polynomial_roots(a));
}
BENCHMARK(BM_AberthRoots)->Arg(4)->Arg(16)->Arg(64);

template <class T>
void BM_UpperEnvelope(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto domain = std::make_shared<const PointConfiguration>(n, box(n, state.range(1)));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> dist(-50, 50);
  std::vector<T> values(domain->size());
  for (auto& v : values) v = T(dist(rng));
  for (auto _ : state) benchmark::DoNotOptimize(upper_envelope<T>(domain, values).integral());
}
BENCHMARK(BM_UpperEnvelope<double>)->Args({1, 8})->Args({2, 2})->Args({3, 1});
BENCHMARK(BM_UpperEnvelope<Rational>)->Args({1, 8})->Args({2, 2})->Args({3, 1});

void BM_MahlerSmyth(benchmark::State& state) {
  const auto p = polynomial(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(mahler_mc(p, config(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MahlerSmyth)->Arg(1000)->Arg(100000);

void BM_ArchimedeanSample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto points = box(n, 2);
  std::vector<FactoredElement> f;
  for (std::size_t j = 0; j < points.size(); ++j) {
    f.push_back(FactoredElement::from_polynomial(polynomial(1, {{{1}, 1}, {{0}, static_cast<long>(j) - 2}})));
  }
  const SubtorusData data(1, LatticePointSet(n, points), f);
  const std::vector<std::complex<double>> p{std::polar(1.0, 0.7)};
  for (auto _ : state) benchmark::DoNotOptimize(archimedean_roof_integral(data, p));
}
BENCHMARK(BM_ArchimedeanSample)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
