// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <functional>
#include <optional>
#include <set>

#include "toricheight/errors.hpp"
#include "toricheight/roof.hpp"

namespace toricheight {

namespace {

__extension__ typedef __int128 Wide;

std::int64_t det_int(std::vector<std::int64_t> m, std::size_t n) {
  if (n == 0) return 1;
  if (n == 1) return m[0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::int64_t> minor;
    minor.reserve((n - 1) * (n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) minor.push_back(m[r * n + k]);
      }
    }
    const std::int64_t sub = det_int(std::move(minor), n - 1);
    total += (c % 2 == 0 ? 1 : -1) * m[c] * sub;
  }
  return total;
}

struct Hyperplane {
  std::vector<std::int64_t> normal;
  std::int64_t offset;
  auto operator<=>(const Hyperplane&) const = default;
};

// Hyperplanes spanned by n affinely independent points, normalized up to sign and scale.
std::vector<Hyperplane> spanned_hyperplanes(std::size_t n, std::span<const LatticePoint> points) {
  std::set<Hyperplane> planes;
  std::vector<std::size_t> idx(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      // Rows are differences to the first point; normal_i is the signed cofactor of column i.
      std::vector<std::int64_t> normal(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> minor;
        for (std::size_t r = 1; r < n; ++r) {
          for (std::size_t k = 0; k < n; ++k) {
            if (k != i) minor.push_back(points[idx[r]][k] - points[idx[0]][k]);
          }
        }
        normal[i] = (i % 2 == 0 ? 1 : -1) * det_int(std::move(minor), n - 1);
      }
      std::int64_t g = 0;
      for (auto a : normal) g = std::gcd(g, a);
      if (g == 0) return;
      for (auto& a : normal) a /= g;
      auto first = std::find_if(normal.begin(), normal.end(), [](std::int64_t a) { return a != 0; });
      if (*first < 0) {
        for (auto& a : normal) a = -a;
      }
      std::int64_t offset = 0;
      for (std::size_t i = 0; i < n; ++i) offset += normal[i] * points[idx[0]][i];
      planes.insert({std::move(normal), offset});
      return;
    }
    for (std::size_t j = start; j < points.size(); ++j) {
      idx[depth] = j;
      rec(depth + 1, j + 1);
    }
  };
  rec(0, 0);
  return {planes.begin(), planes.end()};
}

// Maximum over all simplices of lifted points containing x of the interpolated height.
struct CaratheodoryEnvelope {
  std::size_t n;
  std::vector<std::vector<double>> inverses;  // (n+1)^2, lambda = inv * (1, x)
  std::vector<std::vector<double>> heights;

  CaratheodoryEnvelope(std::size_t dim, std::span<const LatticePoint> points, std::span<const double> values) : n(dim) {
    const std::size_t n1 = n + 1;
    std::vector<std::size_t> idx(n1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
      if (depth == n1) {
        std::vector<double> a(n1 * n1), inv(n1 * n1, 0.0);
        for (std::size_t t = 0; t < n1; ++t) {
          a[t] = 1.0;
          for (std::size_t i = 0; i < n; ++i) a[(i + 1) * n1 + t] = static_cast<double>(points[idx[t]][i]);
          inv[t * n1 + t] = 1.0;
        }
        for (std::size_t col = 0; col < n1; ++col) {
          std::size_t piv = col;
          for (std::size_t r = col + 1; r < n1; ++r) {
            if (std::abs(a[r * n1 + col]) > std::abs(a[piv * n1 + col])) piv = r;
          }
          if (std::abs(a[piv * n1 + col]) < 1e-9) return;
          for (std::size_t k = 0; k < n1; ++k) {
            std::swap(a[piv * n1 + k], a[col * n1 + k]);
            std::swap(inv[piv * n1 + k], inv[col * n1 + k]);
          }
          const double p = a[col * n1 + col];
          for (std::size_t k = 0; k < n1; ++k) {
            a[col * n1 + k] /= p;
            inv[col * n1 + k] /= p;
          }
          for (std::size_t r = 0; r < n1; ++r) {
            if (r == col) continue;
            const double f = a[r * n1 + col];
            for (std::size_t k = 0; k < n1; ++k) {
              a[r * n1 + k] -= f * a[col * n1 + k];
              inv[r * n1 + k] -= f * inv[col * n1 + k];
            }
          }
        }
        std::vector<double> h(n1);
        for (std::size_t t = 0; t < n1; ++t) h[t] = values[idx[t]];
        inverses.push_back(std::move(inv));
        heights.push_back(std::move(h));
        return;
      }
      for (std::size_t j = start; j < points.size(); ++j) {
        idx[depth] = j;
        rec(depth + 1, j + 1);
      }
    };
    rec(0, 0);
  }

  std::optional<double> operator()(std::span<const double> x) const {
    const std::size_t n1 = n + 1;
    std::optional<double> best;
    for (std::size_t s = 0; s < inverses.size(); ++s) {
      const auto& inv = inverses[s];
      double v = 0.0;
      bool inside = true;
      for (std::size_t t = 0; t < n1 && inside; ++t) {
        double l = inv[t * n1];
        for (std::size_t i = 0; i < n; ++i) l += inv[t * n1 + i + 1] * x[i];
        inside = l >= -1e-12;
        v += l * heights[s][t];
      }
      if (inside && (!best || v > *best)) best = v;
    }
    return best;
  }
};

}  // namespace

BruteForceIntegral integrate_envelope_bruteforce(std::size_t dimension, std::span<const LatticePoint> points,
                                                 std::span<const double> values, std::int64_t resolution) {
  if (resolution < 2) throw InvalidInput("resolution must be at least 2");
  if (points.size() != values.size()) throw InvalidInput("points and heights differ in length");
  if (points.empty()) throw InvalidInput("no points");
  const std::size_t n = dimension;
  BruteForceIntegral out;
  if (n == 0) {
    out.value = *std::max_element(values.begin(), values.end());
    out.cells = 1;
    return out;
  }
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = points[0][i];
    for (const auto& p : points) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
    if (lo[i] == hi[i]) throw DomainError("point configuration is not full-dimensional");
  }
  double cap = 0.0;
  for (double v : values) cap = std::max(cap, std::abs(v));

  const auto planes = spanned_hyperplanes(n, points);
  const std::size_t words = (planes.size() + 63) / 64;
  const std::int64_t side = resolution + 1;
  std::int64_t vertex_count = 1;
  for (std::size_t i = 0; i < n; ++i) vertex_count *= side;

  // Grid vertex g sits at lo + (hi - lo) g / R; R (a.x - b) is then an integer.
  std::vector<std::uint64_t> pos(static_cast<std::size_t>(vertex_count) * words, 0);
  std::vector<std::uint64_t> neg(pos.size(), 0);
  std::vector<std::int64_t> g(n);
  for (std::int64_t v = 0; v < vertex_count; ++v) {
    std::int64_t rest = v;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = rest % side;
      rest /= side;
    }
    for (std::size_t h = 0; h < planes.size(); ++h) {
      Wide acc = -static_cast<Wide>(resolution) * planes[h].offset;
      for (std::size_t i = 0; i < n; ++i) {
        acc += static_cast<Wide>(planes[h].normal[i]) * (static_cast<Wide>(resolution) * lo[i] + static_cast<Wide>(hi[i] - lo[i]) * g[i]);
      }
      const std::size_t slot = static_cast<std::size_t>(v) * words + h / 64;
      if (acc > 0) pos[slot] |= std::uint64_t{1} << (h % 64);
      if (acc < 0) neg[slot] |= std::uint64_t{1} << (h % 64);
    }
  }

  const CaratheodoryEnvelope envelope(n, points, values);
  double cell_volume = 1.0;
  for (std::size_t i = 0; i < n; ++i) cell_volume *= static_cast<double>(hi[i] - lo[i]) / static_cast<double>(resolution);

  std::int64_t cell_count = 1;
  for (std::size_t i = 0; i < n; ++i) cell_count *= resolution;
  std::vector<double> mid(n);
  std::vector<std::uint64_t> any_pos(words), any_neg(words);
  double sum = 0.0;
  for (std::int64_t c = 0; c < cell_count; ++c) {
    std::int64_t rest = c;
    std::int64_t base = 0, stride = 1;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = rest % resolution;
      rest /= resolution;
      base += g[i] * stride;
      stride *= side;
      mid[i] = static_cast<double>(lo[i]) +
               static_cast<double>(hi[i] - lo[i]) * (static_cast<double>(g[i]) + 0.5) / static_cast<double>(resolution);
    }
    std::fill(any_pos.begin(), any_pos.end(), 0);
    std::fill(any_neg.begin(), any_neg.end(), 0);
    for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << n); ++corner) {
      std::int64_t v = base, st = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (corner & (std::uint64_t{1} << i)) v += st;
        st *= side;
      }
      for (std::size_t w = 0; w < words; ++w) {
        any_pos[w] |= pos[static_cast<std::size_t>(v) * words + w];
        any_neg[w] |= neg[static_cast<std::size_t>(v) * words + w];
      }
    }
    bool straddles = false;
    for (std::size_t w = 0; w < words; ++w) straddles = straddles || (any_pos[w] & any_neg[w]) != 0;
    if (straddles) {
      ++out.straddling_cells;
      out.error_bound += 2.0 * cap * cell_volume;
    }
    if (auto value = envelope(mid)) sum += *value * cell_volume;
  }
  out.value = sum;
  out.cells = cell_count;
  return out;
}

}  // namespace toricheight
