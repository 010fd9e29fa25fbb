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

#include "vpoly/polytope.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vpoly {

/// Formal difference P - Q of polytopes under Minkowski addition. Two pairs
/// represent the same element iff P1 + Q2 = P2 + Q1; the support function
/// f_V = f_P - f_Q depends only on the element. No attempt is made to keep a
/// minimal representative pair.
class VirtualPolytope {
public:
  VirtualPolytope(Polytope positive, Polytope negative)
      : pos_(std::move(positive)), neg_(std::move(negative)) {
    if (pos_.ambient_dim() != neg_.ambient_dim())
      throw DimensionMismatch("VirtualPolytope: part dimensions differ");
  }

  static VirtualPolytope zero(std::size_t n) {
    return VirtualPolytope(Polytope::origin(n), Polytope::origin(n));
  }
  static VirtualPolytope from_polytope(Polytope p) {
    const std::size_t n = p.ambient_dim();
    return VirtualPolytope(std::move(p), Polytope::origin(n));
  }
  static VirtualPolytope point(RatVec v) {
    return from_polytope(Polytope::singleton(std::move(v)));
  }

  const Polytope& positive() const { return pos_; }
  const Polytope& negative() const { return neg_; }
  std::size_t ambient_dim() const { return pos_.ambient_dim(); }

private:
  Polytope pos_, neg_;
};

/// Extensional equality: minkowski_sum(P1, Q2) == minkowski_sum(P2, Q1).
inline bool v_equals(const VirtualPolytope& a, const VirtualPolytope& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("v_equals: ambient dimensions differ");
  return minkowski_sum(a.positive(), b.negative()) == minkowski_sum(b.positive(), a.negative());
}

/// (P1+P2) - (Q1+Q2); f_{V1+V2} = f_{V1} + f_{V2}.
inline VirtualPolytope v_add(const VirtualPolytope& a, const VirtualPolytope& b) {
  return VirtualPolytope(minkowski_sum(a.positive(), b.positive()),
                         minkowski_sum(a.negative(), b.negative()));
}

/// Signed scaling with f_{v_scale(V,lambda)} = lambda f_V for all real
/// lambda: nonnegative factors scale both parts, negative factors scale the
/// swapped pair (the Grothendieck inverse). Pointwise reflection would not
/// negate a support function, so lambda < 0 must go through the inverse.
inline VirtualPolytope v_scale(const VirtualPolytope& v, const Rat& lambda) {
  if (lambda >= 0)
    return VirtualPolytope(scale(v.positive(), lambda), scale(v.negative(), lambda));
  const Rat m = -lambda;
  return VirtualPolytope(scale(v.negative(), m), scale(v.positive(), m));
}

/// conv(P1+Q2, P2+Q1) - (Q1+Q2); f = max{f_{V1}, f_{V2}} pointwise.
inline VirtualPolytope v_conv(const VirtualPolytope& a, const VirtualPolytope& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("v_conv: ambient dimensions differ");
  return VirtualPolytope(
      convex_union(minkowski_sum(a.positive(), b.negative()),
                   minkowski_sum(b.positive(), a.negative())),
      minkowski_sum(a.negative(), b.negative()));
}

/// f_V(x) = f_P(x) - f_Q(x).
inline Rat v_support(const VirtualPolytope& v, const RatVec& x) {
  return support_value(v.positive(), x) - support_value(v.negative(), x);
}

/// One affine piece of f_V on a full-dimensional cell of the common
/// refinement of the normal fans: gradient = a - b for the unique extreme
/// pair maximizing there, witness = a direction interior to the cell.
struct GradientCell {
  RatVec gradient;
  RatVec witness;
};
using GradientCellSet = std::vector<GradientCell>;

/// Enumerates the affine pieces of f_V on maximal cells. A pair (a, b) of
/// extreme points spans a full-dimensional cell iff a + b is extreme in
/// P + Q, and the unique decomposition of each vertex of P + Q recovers the
/// pair; the extremeness certificate of a + b is a direction strictly inside
/// the cell. Every returned witness is re-checked against the strict cone
/// system it claims to satisfy. Gradients are deduplicated and sorted.
inline GradientCellSet cell_gradients(const VirtualPolytope& v) {
  const Polytope& p = v.positive();
  const Polytope& q = v.negative();
  // Tag each candidate sum with its generating pair; vertices of the sum
  // have exactly one generating pair.
  std::map<RatVec, std::pair<std::size_t, std::size_t>> tag;
  RatMat sums;
  sums.reserve(p.size() * q.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      RatVec s = add(p.points()[i], q.points()[j]);
      tag.emplace(s, std::make_pair(i, j));
      sums.push_back(std::move(s));
    }
  const auto [sum_poly, separators] = canonical_form_certified(sums);

  std::map<RatVec, RatVec> by_gradient;  // gradient -> first witness
  for (std::size_t k = 0; k < sum_poly.size(); ++k) {
    const auto [i, j] = tag.at(sum_poly.points()[k]);
    const RatVec& a = p.points()[i];
    const RatVec& b = q.points()[j];
    const RatVec& c = separators[k];
    // The separator must lie strictly inside {x : a maximizes P, b maximizes Q}.
    if (sum_poly.size() > 1) {
      for (std::size_t t = 0; t < p.size(); ++t)
        if (t != i && dot(sub(a, p.points()[t]), c) <= 0)
          throw std::logic_error("cell_gradients: witness fails strict inequality over P");
      for (std::size_t t = 0; t < q.size(); ++t)
        if (t != j && dot(sub(b, q.points()[t]), c) <= 0)
          throw std::logic_error("cell_gradients: witness fails strict inequality over Q");
    }
    by_gradient.emplace(sub(a, b), c);
  }
  GradientCellSet out;
  out.reserve(by_gradient.size());
  for (auto& [g, w] : by_gradient) out.push_back({g, w});
  return out;
}

/// Rank of {g - g_0} over the cell set.
inline std::size_t gradient_rank(const GradientCellSet& cells) {
  if (cells.size() <= 1) return 0;
  RatMat diffs;
  diffs.reserve(cells.size() - 1);
  for (std::size_t i = 1; i < cells.size(); ++i)
    diffs.push_back(sub(cells[i].gradient, cells[0].gradient));
  return rank(diffs);
}

/// Dimension of the virtual polytope, computed as the codimension of the
/// lineality space of f_V: the rank of the gradient differences across
/// maximal cells. Bounded above by dim(P + Q) for every representative pair.
inline std::size_t v_dim(const VirtualPolytope& v) {
  return gradient_rank(cell_gradients(v));
}

/// Basis of the orthogonal complement of span{g - g_0}: the directions along
/// which f_V is affine, f_V(x + w) = f_V(x) + g_0.w. Has n - v_dim(V)
/// elements.
inline RatMat lineality_basis(const VirtualPolytope& v) {
  const GradientCellSet cells = cell_gradients(v);
  RatMat diffs;
  for (std::size_t i = 1; i < cells.size(); ++i)
    diffs.push_back(sub(cells[i].gradient, cells[0].gradient));
  return kernel_basis(std::move(diffs), v.ambient_dim());
}

}  // namespace vpoly
