// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force reference implementations for the geometric kernel. These stay
// deliberately independent of the LP-based paths they check: hull membership
// enumerates barycentric systems by Gaussian elimination, edges go through
// the midpoint characterization, and cell enumeration by pairwise strict
// cones (the definitional route) cross-checks the Minkowski-vertex route.

#include "vpoly/virtual_polytope.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vpoly::oracle {

/// Unique solution of the (rows x cols) system M lambda = b if the columns
/// are linearly independent and the system is consistent; nullopt otherwise.
inline std::optional<RatVec> solve_unique(RatMat m, RatVec b) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rk = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < cols && rk < rows; ++col) {
    std::size_t piv = rk;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rk], m[piv]);
    std::swap(b[rk], b[piv]);
    const Rat p = m[rk][col];
    for (auto& x : m[rk]) x /= p;
    b[rk] /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rk || m[i][col] == 0) continue;
      const Rat f = m[i][col];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rk][j];
      b[i] -= f * b[rk];
    }
    pivot_col.push_back(col);
    ++rk;
  }
  if (rk < cols) return std::nullopt;  // dependent columns
  for (std::size_t i = rk; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;  // inconsistent
  RatVec lambda(cols);
  for (std::size_t i = 0; i < rk; ++i) lambda[pivot_col[i]] = b[i];
  return lambda;
}

/// Caratheodory enumeration: p lies in conv(gens) iff some affinely
/// independent subset of at most n+1 generators carries it with nonnegative
/// unique barycentric coordinates.
inline bool in_hull(const RatVec& p, const RatMat& gens) {
  const std::size_t n = p.size();
  const std::size_t limit = n + 1;
  std::vector<std::size_t> subset;
  const auto system_holds = [&]() {
    RatMat m(n + 1, RatVec(subset.size()));
    RatVec b = p;
    b.push_back(1);
    for (std::size_t c = 0; c < subset.size(); ++c) {
      for (std::size_t r = 0; r < n; ++r) m[r][c] = gens[subset[c]][r];
      m[n][c] = 1;
    }
    const auto lambda = solve_unique(std::move(m), std::move(b));
    if (!lambda) return false;
    for (const Rat& l : *lambda)
      if (l < 0) return false;
    return true;
  };
  const auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (!subset.empty() && system_holds()) return true;
    if (subset.size() == limit) return false;
    for (std::size_t i = start; i < gens.size(); ++i) {
      subset.push_back(i);
      if (self(self, i + 1)) return true;
      subset.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

/// Extreme points by definition: not in the hull of the other points.
inline RatMat extreme_points(const RatMat& points) {
  RatMat cand = points;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  RatMat out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    RatMat others;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (j != i) others.push_back(cand[j]);
    if (others.empty() || !in_hull(cand[i], others)) out.push_back(cand[i]);
  }
  return out;
}

/// Midpoint characterization of 1-faces: (a, b) is an edge iff the midpoint
/// needs both endpoints, i.e. it lies in neither conv(V - a) nor conv(V - b).
inline std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const RatMat& v = p.points();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const RatVec mid = scaled(add(v[i], v[j]), Rat(1, 2));
      RatMat wo_i, wo_j;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k != i) wo_i.push_back(v[k]);
        if (k != j) wo_j.push_back(v[k]);
      }
      if (!in_hull(mid, wo_i) && !in_hull(mid, wo_j)) out.emplace_back(i, j);
    }
  return out;
}

/// The definitional cell enumeration: one strict-feasibility LP per extreme
/// pair, as opposed to the Minkowski-vertex route in cell_gradients.
inline std::vector<RatVec> cell_gradients_pairwise(const VirtualPolytope& v) {
  std::vector<RatVec> grads;
  for (const RatVec& a : v.positive().points())
    for (const RatVec& b : v.negative().points()) {
      ConeSystem cone;
      cone.n = v.ambient_dim();
      for (const RatVec& ak : v.positive().points())
        if (ak != a) cone.strict.push_back(sub(a, ak));
      for (const RatVec& bl : v.negative().points())
        if (bl != b) cone.strict.push_back(sub(b, bl));
      if (strict_cone_feasible(cone).feasible) grads.push_back(sub(a, b));
    }
  std::sort(grads.begin(), grads.end());
  grads.erase(std::unique(grads.begin(), grads.end()), grads.end());
  return grads;
}

/// Gradients of f_V identified by maximizer sampling over a rational grid;
/// complete only for the hand-picked test instances it is used on.
inline std::vector<RatVec> cell_gradients_grid(const VirtualPolytope& v,
                                               const std::vector<Rat>& grid) {
  const std::size_t n = v.ambient_dim();
  std::vector<RatVec> grads;
  std::vector<std::size_t> idx(n, 0);
  RatVec x(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) x[k] = grid[idx[k]];
    const auto arg_unique = [&](const Polytope& poly) -> std::optional<RatVec> {
      std::size_t best = 0, ties = 1;
      Rat val = dot(poly.points()[0], x);
      for (std::size_t i = 1; i < poly.size(); ++i) {
        const Rat d = dot(poly.points()[i], x);
        if (d > val)
          val = d, best = i, ties = 1;
        else if (d == val)
          ++ties;
      }
      if (ties > 1) return std::nullopt;
      return poly.points()[best];
    };
    const auto a = arg_unique(v.positive());
    const auto b = arg_unique(v.negative());
    if (a && b) grads.push_back(sub(*a, *b));
    std::size_t k = 0;
    while (k < n && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == n) break;
  }
  std::sort(grads.begin(), grads.end());
  grads.erase(std::unique(grads.begin(), grads.end()), grads.end());
  return grads;
}

/// Brute-force strict feasibility over a rational grid.
inline std::optional<RatVec> grid_strict_feasible(const RatMat& rows, const std::vector<Rat>& grid,
                                                  std::size_t n) {
  std::vector<std::size_t> idx(n, 0);
  RatVec x(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) x[k] = grid[idx[k]];
    bool ok = true;
    for (const RatVec& r : rows)
      if (dot(r, x) <= 0) {
        ok = false;
        break;
      }
    if (ok) return x;
    std::size_t k = 0;
    while (k < n && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return std::nullopt;
}

}  // namespace vpoly::oracle
