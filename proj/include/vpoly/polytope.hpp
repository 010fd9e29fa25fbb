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

#include "vpoly/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vpoly {

class EmptyGeneratorSet : public std::invalid_argument {
public:
  EmptyGeneratorSet() : std::invalid_argument("polytope needs at least one generator point") {}
};

class NegativeScaleOnPolytope : public std::invalid_argument {
public:
  NegativeScaleOnPolytope()
      : std::invalid_argument("polytopes scale by nonnegative factors only; "
                              "use the virtual algebra for signed scaling") {}
};

namespace detail {

struct HullMembership {
  bool member = false;
  RatVec multipliers;  // convex coefficients over the generators when member
  RatVec separator;    // direction c with c.p > c.g for every generator otherwise
};

/// Decides p in conv(gens) by the LP "find convex multipliers reproducing p".
/// Infeasibility yields a strictly separating direction via the Farkas dual.
inline HullMembership hull_membership(const RatVec& p, const RatMat& gens) {
  HullMembership out;
  const std::size_t n = p.size();
  if (gens.empty()) return out;  // not a member, separator unused
  LinearProgram lp;
  const std::size_t k = gens.size();
  lp.objective = zero_vec(k);
  lp.lower.assign(k, Rat(0));
  for (std::size_t coord = 0; coord < n; ++coord) {
    RatVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = gens[i][coord];
    lp.add_row(std::move(row), Rel::Eq, p[coord]);
  }
  lp.add_row(RatVec(k, Rat(1)), Rel::Eq, Rat(1));
  const LpResult r = lp_optimize(lp);
  if (r.status == LpStatus::Optimal) {
    out.member = true;
    out.multipliers = r.point;
  } else {
    // Farkas y over the n+1 equality rows: y.(g,1) <= 0 < y.(p,1), so the
    // coordinate part separates strictly.
    out.separator.assign(r.farkas.begin(), r.farkas.begin() + static_cast<long>(n));
  }
  return out;
}

}  // namespace detail

/// A polytope in V-representation and canonical form: the lexicographically
/// sorted list of its extreme points. Two polytopes are equal iff their
/// stored lists are equal.
class Polytope {
public:
  std::size_t ambient_dim() const { return n_; }
  const RatMat& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }

  bool operator==(const Polytope& o) const { return n_ == o.n_ && pts_ == o.pts_; }
  bool operator!=(const Polytope& o) const { return !(*this == o); }
  bool operator<(const Polytope& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return pts_ < o.pts_;
  }

  static Polytope singleton(RatVec v) {
    Polytope p;
    p.n_ = v.size();
    p.pts_.push_back(std::move(v));
    return p;
  }

  static Polytope origin(std::size_t n) { return singleton(zero_vec(n)); }

  friend Polytope canonical_form(const RatMat& points);
  friend std::pair<Polytope, RatMat> canonical_form_certified(const RatMat& points);
  friend Polytope scale(const Polytope& p, const Rat& lambda);
  friend Polytope minkowski_sum(const Polytope& p, const Polytope& q);

private:
  Polytope() = default;
  std::size_t n_ = 0;
  RatMat pts_;
};

namespace detail {

// Output-sensitive extreme-point scan. Confirmed vertices accumulate in S;
// each candidate is either certified inside conv(S) or triggers discovery of
// a new vertex along a separating direction (farthest point, lexicographic
// tie-break, which is always extreme). Membership LPs therefore only ever
// have |vertices| columns.
inline std::vector<std::size_t> extreme_indices(const RatMat& cand) {
  const std::size_t k = cand.size();
  std::vector<std::size_t> vert;
  if (k == 1) return {0};
  if (k == 2) return {0, 1};  // distinct points are both extreme
  RatMat S;
  std::vector<bool> in_S(k, false);
  const auto discover = [&](const RatVec& dir) -> std::size_t {
    std::size_t best = k;
    Rat best_val;
    for (std::size_t i = 0; i < k; ++i) {
      const Rat v = dot(dir, cand[i]);
      if (best == k || v > best_val || (v == best_val && cand[i] > cand[best]))
        best = i, best_val = v;
    }
    return best;
  };
  for (std::size_t idx = 0; idx < k; ++idx) {
    if (in_S[idx]) continue;
    for (;;) {
      if (S.empty()) {
        // No reference hull yet: the lexicographic maximum is extreme.
        const std::size_t q = discover(zero_vec(cand[0].size()));
        in_S[q] = true;
        vert.push_back(q);
        S.push_back(cand[q]);
        if (q == idx) break;
        continue;
      }
      const HullMembership hm = hull_membership(cand[idx], S);
      if (hm.member) break;
      const std::size_t q = discover(hm.separator);
      in_S[q] = true;
      vert.push_back(q);
      S.push_back(cand[q]);
      if (q == idx) break;
    }
  }
  std::sort(vert.begin(), vert.end());
  return vert;
}

inline RatMat sorted_unique(const RatMat& points) {
  RatMat cand = points;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

}  // namespace detail

/// Extreme-point subset of the generators, sorted; conv is preserved.
inline Polytope canonical_form(const RatMat& points) {
  if (points.empty()) throw EmptyGeneratorSet();
  const std::size_t n = points[0].size();
  for (const auto& p : points)
    if (p.size() != n) throw DimensionMismatch("canonical_form: mixed point dimensions");
  RatMat cand = detail::sorted_unique(points);
  const std::vector<std::size_t> vert = detail::extreme_indices(cand);
  Polytope out;
  out.n_ = n;
  out.pts_.reserve(vert.size());
  for (std::size_t i : vert) out.pts_.push_back(std::move(cand[i]));
  return out;
}

/// canonical_form plus, per retained vertex, a direction that strictly
/// maximizes that vertex alone (its certificate of extremeness and an
/// interior point of its normal cone). Aligned with the returned point list.
inline std::pair<Polytope, RatMat> canonical_form_certified(const RatMat& points) {
  Polytope p = canonical_form(points);
  RatMat seps;
  seps.reserve(p.size());
  if (p.size() == 1) {
    seps.push_back(zero_vec(p.ambient_dim()));
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) {
      RatMat others;
      others.reserve(p.size() - 1);
      for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i) others.push_back(p.points()[j]);
      const detail::HullMembership hm = detail::hull_membership(p.points()[i], others);
      if (hm.member)
        throw std::logic_error("canonical_form_certified: canonical point not extreme");
      seps.push_back(primitive_row(hm.separator));
    }
  }
  return {std::move(p), std::move(seps)};
}

/// Canonical form of {p + q : p in P, q in Q}; f_{P+Q} = f_P + f_Q.
inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw DimensionMismatch("minkowski_sum: ambient dimensions differ");
  // Singleton summand: a translation preserves extremeness and lex order.
  if (p.size() == 1 || q.size() == 1) {
    const Polytope& big = p.size() == 1 ? q : p;
    const RatVec& t = (p.size() == 1 ? p : q).points()[0];
    Polytope out;
    out.n_ = big.ambient_dim();
    out.pts_.reserve(big.size());
    for (const auto& v : big.points()) out.pts_.push_back(add(v, t));
    return out;
  }
  RatMat sums;
  sums.reserve(p.size() * q.size());
  for (const auto& a : p.points())
    for (const auto& b : q.points()) sums.push_back(add(a, b));
  return canonical_form(sums);
}

/// Canonical form of conv(P u Q); f = max{f_P, f_Q}.
inline Polytope convex_union(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw DimensionMismatch("convex_union: ambient dimensions differ");
  RatMat all = p.points();
  all.insert(all.end(), q.points().begin(), q.points().end());
  return canonical_form(all);
}

/// lambda P for lambda >= 0; f_{lambda P} = lambda f_P.
inline Polytope scale(const Polytope& p, const Rat& lambda) {
  if (lambda < 0) throw NegativeScaleOnPolytope();
  if (lambda == 0) return Polytope::origin(p.ambient_dim());
  Polytope out;
  out.n_ = p.ambient_dim();
  out.pts_.reserve(p.size());
  for (const auto& v : p.points()) out.pts_.push_back(scaled(v, lambda));
  return out;  // positive scaling preserves extremeness and lex order
}

/// Dimension of the affine hull: rank of {p_i - p_0}.
inline std::size_t poly_dim(const Polytope& p) {
  if (p.size() <= 1) return 0;
  RatMat diffs;
  diffs.reserve(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) diffs.push_back(sub(p.points()[i], p.points()[0]));
  return rank(diffs);
}

/// Support function value f_P(x) = max over extreme points of the dot product.
inline Rat support_value(const Polytope& p, const RatVec& x) {
  if (x.size() != p.ambient_dim())
    throw DimensionMismatch("support_value: direction dimension mismatch");
  Rat best = dot(p.points()[0], x);
  for (std::size_t i = 1; i < p.size(); ++i) {
    Rat v = dot(p.points()[i], x);
    if (v > best) best = v;
  }
  return best;
}

/// Unordered extreme-point index pairs forming 1-faces.
using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// (a, a') is an edge iff some direction maximizes exactly {a, a'}: the cone
/// {x : (a - a_k).x >= 0, (a - a').x = 0} admits a point with every
/// inequality for k outside the pair strict.
inline EdgeList edges(const Polytope& p) {
  EdgeList out;
  const RatMat& v = p.points();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      ConeSystem cone;
      cone.n = p.ambient_dim();
      cone.eq.push_back(sub(v[i], v[j]));
      for (std::size_t k = 0; k < v.size(); ++k)
        if (k != i && k != j) cone.strict.push_back(sub(v[i], v[k]));
      if (strict_cone_feasible(cone).feasible) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace vpoly
