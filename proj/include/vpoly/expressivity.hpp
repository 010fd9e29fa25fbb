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

#include "vpoly/maxout.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vpoly {

class NotConvex : public std::invalid_argument {
public:
  explicit NotConvex(const std::string& what) : std::invalid_argument(what) {}
};

/// m_ell = sum_{k=1}^{ell} (r_k - 1) prod_{i=k+1}^{ell} d_i.
inline Int dim_bound(const ArchitectureSpec& spec) {
  check_spec(spec);
  return prefix_dim_bound(spec, spec.depth);
}

/// Certified upper bound on the max-rank needed to express the network's
/// function as a MAX expression: m_ell + 1.
inline Int max_rank_upper(const SparseMaxoutNetwork& net) { return dim_bound(net.spec) + 1; }

struct DimBoundReport {
  ArchitectureSpec spec;
  std::size_t computed_dim = 0;
  Int bound;
  bool holds = false;
  GradientCellSet cells;  // gradient/witness pairs behind computed_dim
};

/// v_dim of the network's Newton virtual polytope against m_ell. A false
/// `holds` would contradict the dimension bound and is a soundness bug.
inline DimBoundReport check_dim_bound(const SparseMaxoutNetwork& net) {
  {
    const std::vector<Violation> bad = validate(net);
    if (!bad.empty()) throw InvalidNetwork("check_dim_bound: " + bad.front().to_string());
  }
  DimBoundReport rep;
  rep.spec = net.spec;
  rep.bound = dim_bound(net.spec);
  const VirtualPolytope v = newton_extract(net).first;
  rep.cells = cell_gradients(v);
  rep.computed_dim = gradient_rank(rep.cells);
  rep.holds = Int(rep.computed_dim) <= rep.bound;
  return rep;
}

// ---------------------------------------------------------------------------
// Hyperplane non-expressibility test (convex case): f is outside MAX_n(n)
// whenever the union T of (n-1)-cells of its complex inside the hyperplane
// {c.x = 0} is nonempty and line-free.
// ---------------------------------------------------------------------------

enum class HyperplaneVerdict { NotInMaxN, Inconclusive };

/// One candidate (n-1)-cell: the normal cone of the vertex pair (a, b)
/// restricted to the hyperplane. The transcript carries either a strictly
/// interior witness direction or a blocking dual vector.
struct ConeTranscript {
  std::size_t vertex_a = 0, vertex_b = 0;  // indices into the polytope
  RatMat strict_rows;                      // (p_a - p_k) for k outside the pair
  bool contributes = false;
  RatVec witness;          // when contributing: c.witness = 0, rows.witness > 0
  RatVec blocker_strict;   // otherwise: nonneg, mass 1, rows^T y + mu c = 0
  RatVec blocker_eq;       // the multiplier mu on the hyperplane row
};

/// Line check between two contributing cones F_i and F_j: does some v != 0
/// satisfy v in F_i and -v in F_j? Decided by a sweep of normalizations
/// e_axis . v = sign over all axes; a single feasible system exhibits the
/// line, otherwise each system carries a Farkas vector y over the rows
/// [c; R_i; -R_j; e_axis] proving its infeasibility.
struct LineCheckTranscript {
  std::size_t cone_i = 0, cone_j = 0;  // indices into the contributing list
  bool line_found = false;
  RatVec direction;  // when found
  struct FarkasEntry {
    std::size_t axis = 0;
    int sign = 1;
    RatVec y;
  };
  std::vector<FarkasEntry> farkas;  // one per normalization when line-free
};

struct HyperplaneCertificate {
  RatVec normal;
  Polytope newton = Polytope::origin(1);
  std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs;
  std::vector<ConeTranscript> cones;  // aligned with candidate_pairs
  std::vector<std::size_t> contributing;  // indices into cones
  std::vector<LineCheckTranscript> line_checks;
  HyperplaneVerdict verdict = HyperplaneVerdict::Inconclusive;
  std::string reason;
};

namespace detail {

/// Weak rows of the full (closed) normal cone of the pair within R^n.
inline RatMat cone_rows(const Polytope& p, std::size_t a) {
  RatMat rows;
  rows.reserve(p.size() - 1);
  for (std::size_t k = 0; k < p.size(); ++k)
    if (k != a) rows.push_back(sub(p.points()[a], p.points()[k]));
  return rows;
}

}  // namespace detail

/// Tests the Newton polytope of a convex positively homogeneous CPWL
/// function against the hyperplane H = {x : c.x = 0}. The (n-1)-cells of the
/// underlying complex inside H are the normal cones of vertex pairs whose
/// difference is parallel to c and which are strictly feasible relative to
/// H; the test certifies T nonempty and line-free (NotInMaxN) or reports
/// Inconclusive. Every verdict is backed by LP transcripts.
inline HyperplaneCertificate hyperplane_test(const Polytope& p, const RatVec& c) {
  if (c.size() != p.ambient_dim())
    throw DimensionMismatch("hyperplane_test: normal dimension mismatch");
  if (is_zero(c)) throw std::invalid_argument("hyperplane_test: zero normal");
  const std::size_t n = p.ambient_dim();
  HyperplaneCertificate cert;
  cert.normal = primitive_row(c);
  cert.newton = p;

  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (parallel_nonzero(sub(p.points()[i], p.points()[j]), cert.normal))
        cert.candidate_pairs.emplace_back(i, j);

  for (const auto& [i, j] : cert.candidate_pairs) {
    ConeTranscript tr;
    tr.vertex_a = i;
    tr.vertex_b = j;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (k != i && k != j) tr.strict_rows.push_back(sub(p.points()[i], p.points()[k]));
    ConeSystem cone;
    cone.n = n;
    cone.strict = tr.strict_rows;
    cone.eq.push_back(cert.normal);
    const StrictConeResult res = strict_cone_feasible(cone, /*want_blocker=*/true);
    tr.contributes = res.feasible;
    if (res.feasible) {
      tr.witness = res.witness;
      cert.contributing.push_back(cert.cones.size());
    } else {
      tr.blocker_strict = res.blocker_strict;
      tr.blocker_eq = res.blocker_eq;
    }
    cert.cones.push_back(std::move(tr));
  }

  if (cert.contributing.empty()) {
    cert.verdict = HyperplaneVerdict::Inconclusive;
    cert.reason = "T is empty: no (n-1)-dimensional cell of the complex lies in H";
    return cert;
  }

  // T is a finite union of closed cones, so it contains a line iff it
  // contains one through the origin, iff v in F_i and -v in F_j for some
  // ordered pair and v != 0.
  bool line_free = true;
  for (std::size_t u : cert.contributing) {
    for (std::size_t w : cert.contributing) {
      LineCheckTranscript lt;
      lt.cone_i = u;
      lt.cone_j = w;
      const RatMat rows_u = detail::cone_rows(p, cert.cones[u].vertex_a);
      const RatMat rows_w = detail::cone_rows(p, cert.cones[w].vertex_a);
      for (std::size_t axis = 0; axis < n && !lt.line_found; ++axis) {
        for (int sign : {1, -1}) {
          LinearProgram lp;
          lp.objective = zero_vec(n);
          lp.add_row(cert.normal, Rel::Eq, Rat(0));
          for (const auto& r : rows_u) lp.add_row(primitive_row(r), Rel::Ge, Rat(0));
          for (const auto& r : rows_w) lp.add_row(primitive_row(negated(r)), Rel::Ge, Rat(0));
          lp.add_row(unit_vec(n, axis), Rel::Eq, Rat(sign));
          const LpResult res = lp_optimize(lp);
          if (res.status == LpStatus::Optimal) {
            lt.line_found = true;
            lt.direction = res.point;
            break;
          }
          lt.farkas.push_back({axis, sign, res.farkas});
        }
      }
      const bool found = lt.line_found;
      cert.line_checks.push_back(std::move(lt));
      if (found) {
        line_free = false;
        break;
      }
    }
    if (!line_free) break;
  }

  if (line_free) {
    cert.verdict = HyperplaneVerdict::NotInMaxN;
    cert.reason = "T is nonempty and contains no line";
  } else {
    cert.verdict = HyperplaneVerdict::Inconclusive;
    cert.reason = "T contains a line";
  }
  return cert;
}

/// Virtual-polytope front end: only the convex case (negative part a single
/// point) is covered by the underlying lemma. The linear shift by the
/// negative point changes neither the complex nor membership in MAX_n(n).
inline HyperplaneCertificate hyperplane_test(const VirtualPolytope& v, const RatVec& c) {
  if (v.negative().size() != 1)
    throw NotConvex("hyperplane_test: negative part must be a single point");
  return hyperplane_test(v.positive(), c);
}

// ---------------------------------------------------------------------------
// Width cannot compensate: the full certificate pipeline.
// ---------------------------------------------------------------------------

struct WidthCertificate {
  std::size_t n = 0;
  ArchitectureSpec spec;  // the indegree-constrained class being separated
  Int m_ell;
  SparseMaxoutNetwork network;           // the deterministic counterexample
  VirtualPolytope newton = VirtualPolytope::zero(1);
  HyperplaneCertificate hyperplane;
  bool not_in_max_n = false;
  std::vector<std::string> conclusion;
};

/// Builds the counterexample in N_n(2, r=2), validates it, and runs the
/// hyperplane test with c = e_{n-1} - e_n. Verdict NotInMaxN concludes
/// f not in MAX_n(n) >= MAX_n(m_ell + 1) >= N_n(ell, d, r), while f lies in
/// N_n(ell, r): the inclusion of the indegree-constrained class is strict.
/// Hypotheses: depth >= 2, n >= m_ell + 1, and at least two layers of rank
/// >= 2 (needed for membership of the counterexample in N_n(ell, r)).
inline WidthCertificate certify_width_cannot_compensate(std::size_t n,
                                                        const ArchitectureSpec& spec) {
  check_spec(spec);
  if (spec.depth < 2) throw HypothesisUnmet("certify-width requires depth >= 2");
  const Int m = dim_bound(spec);
  if (Int(n) < m + 1)
    throw HypothesisUnmet("certify-width requires n >= m_ell + 1 = " + Int(m + 1).str());
  std::size_t rank2_layers = 0;
  for (std::size_t r : spec.rank)
    if (r >= 2) ++rank2_layers;
  if (rank2_layers < 2)
    throw HypothesisUnmet(
        "certify-width requires at least two layers of rank >= 2 so that the "
        "counterexample lies in the unconstrained class");

  WidthCertificate cert;
  cert.n = n;
  cert.spec = spec;
  cert.m_ell = m;
  cert.network = counterexample_network(n);
  if (!validate(cert.network).empty())
    throw std::logic_error("counterexample network failed validation");
  cert.newton = newton_extract(cert.network).first;
  RatVec c = zero_vec(n);
  c[n - 2] = 1;
  c[n - 1] = -1;
  cert.hyperplane = hyperplane_test(cert.newton, c);
  cert.not_in_max_n = cert.hyperplane.verdict == HyperplaneVerdict::NotInMaxN;
  cert.conclusion = {
      "f(x) = max{sum_j max{0,x_j}, x_{n-1}, x_n} is computed by a validated "
      "two-hidden-layer rank-2 network, hence lies in N_n(ell, r)",
      "hyperplane test with c = e_{n-1} - e_n: " +
          std::string(cert.not_in_max_n ? "NotInMaxN" : "Inconclusive"),
      "f not in MAX_n(n), and MAX_n(n) contains MAX_n(m_ell + 1) = MAX_n(" + Int(m + 1).str() +
          ") which contains N_n(ell, d, r)",
      "therefore N_n(ell, d, r) is strictly contained in N_n(ell, r)"};
  return cert;
}

// ---------------------------------------------------------------------------
// Depth hierarchy report.
// ---------------------------------------------------------------------------

struct HierarchyLevel {
  std::size_t depth = 0;
  Int bound;               // m_{ell'}
  std::size_t attained = 0;  // poly_dim of the constructed polytope
  bool strict_over_previous = false;
  Polytope polytope = Polytope::origin(1);
  ConstructionWitness witness;
};

struct HierarchyReport {
  std::size_t n = 0;
  std::vector<std::size_t> indegree;  // per level used, indegree[0] = n
  std::vector<std::size_t> rank;
  std::vector<HierarchyLevel> levels;
  std::size_t terminal_level = 0;
};

/// Levels ell' = 0, 1, ... while m_{ell'} <= n. Per level the attainment
/// polytope realizes dimension m_{ell'}; strictness of level ell'-1 inside
/// level ell' is certified by m_{ell'} > m_{ell'-1}, the dimension
/// obstruction: no level-(ell'-1) object reaches dimension m_{ell'}.
/// `d_layers`/`r_layers` list per-layer values starting at layer 1; the last
/// entry repeats for deeper levels, and d for layer 1 is always n.
inline HierarchyReport hierarchy_report(std::size_t n, const std::vector<std::size_t>& d_layers,
                                        const std::vector<std::size_t>& r_layers) {
  if (n == 0) throw StructuralError("hierarchy_report: n must be positive");
  if (r_layers.empty() || d_layers.empty())
    throw StructuralError("hierarchy_report: empty rank/indegree family");
  const auto d_of = [&](std::size_t layer) {  // 1-based
    return layer == 1 ? n : (layer - 1 < d_layers.size() ? d_layers[layer - 1] : d_layers.back());
  };
  const auto r_of = [&](std::size_t layer) {
    return layer - 1 < r_layers.size() ? r_layers[layer - 1] : r_layers.back();
  };

  HierarchyReport rep;
  rep.n = n;
  Int prev_bound = 0;
  for (std::size_t level = 0;; ++level) {
    ArchitectureSpec spec;
    spec.input_dim = n;
    spec.depth = level;
    for (std::size_t l = 1; l <= level; ++l) {
      spec.indegree.push_back(d_of(l));
      spec.rank.push_back(r_of(l));
    }
    for (std::size_t i = 2; i <= level; ++i)
      if (spec.rank[i - 1] > spec.indegree[i - 1])
        throw HypothesisUnmet("hierarchy_report requires r_i <= d_i for layers i >= 2");
    const Int m = prefix_dim_bound(spec, level);
    if (m > Int(n)) break;
    const std::size_t mz = static_cast<std::size_t>(m);
    std::vector<std::size_t> I(mz);
    for (std::size_t i = 0; i < mz; ++i) I[i] = i;
    auto [poly, witness] = attainment_construct(spec, zero_vec(n), I);
    HierarchyLevel lv;
    lv.depth = level;
    lv.bound = m;
    lv.attained = poly_dim(poly);
    lv.strict_over_previous = level > 0 && m > prev_bound;
    lv.polytope = std::move(poly);
    lv.witness = std::move(witness);
    rep.levels.push_back(std::move(lv));
    rep.terminal_level = level;
    prev_bound = m;
  }
  if (rep.levels.empty()) throw std::logic_error("hierarchy_report: level 0 must always fit");
  for (std::size_t l = 1; l <= rep.terminal_level; ++l) {
    rep.indegree.push_back(d_of(l));
    rep.rank.push_back(r_of(l));
  }
  return rep;
}

}  // namespace vpoly
