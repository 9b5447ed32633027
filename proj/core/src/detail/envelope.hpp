// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "toricheight/roof.hpp"

namespace toricheight::detail {

// A candidate simplex S is a cell of the upper hull when no lifted point lies
// above the affine interpolant through S. Ties are broken by lifting point j by
// eps_j with eps_0 >> eps_1 >> ... > 0, which yields the pulling triangulation
// in index order: a tied point k stays below iff the lowest index among k and
// the vertices with nonzero barycentric coordinate is a vertex with positive
// coordinate.
//
// compare(s, k) returns the sign of c_k minus the interpolant of simplex s at m_k.
template <class Compare>
std::vector<std::size_t> upper_simplices(const PointConfiguration& domain, Compare&& compare) {
  const std::size_t n1 = domain.dimension() + 1;
  std::vector<std::size_t> accepted;
  const auto& simplices = domain.simplices();
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    const auto& simplex = simplices[s];
    bool upper = true;
    for (std::size_t k = 0; k < domain.size() && upper; ++k) {
      const signed char* sign = &simplex.barycentric_sign[k * n1];
      // Vertices of S interpolate themselves.
      bool is_vertex = false;
      for (std::size_t t = 0; t < n1; ++t) is_vertex = is_vertex || simplex.vertices[t] == k;
      if (is_vertex) continue;
      const int c = compare(s, k);
      if (c > 0) {
        upper = false;
      } else if (c == 0) {
        std::size_t lowest = k;
        int lowest_sign = -1;
        for (std::size_t t = 0; t < n1; ++t) {
          if (sign[t] != 0 && simplex.vertices[t] < lowest) {
            lowest = simplex.vertices[t];
            lowest_sign = sign[t];
          }
        }
        upper = lowest != k && lowest_sign > 0;
      }
    }
    if (upper) accepted.push_back(s);
  }
  return accepted;
}

}  // namespace toricheight::detail
