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

#include "vpoly/json_io.hpp"
#include "vpoly/random_gen.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace vpoly {

/// Transcript replay: re-checks a certificate from its own witnesses and
/// dual vectors by plain rational arithmetic, without re-running any LP.
/// Completeness of enumerations whose negatives carry no dual (the cell
/// sweep behind dim_bound reports) is the one part that requires trusting
/// the original run; everything asserted positively is re-derived here.
struct VerifyResult {
  bool ok = true;
  std::vector<std::string> checks;    // one line per verified claim
  std::vector<std::string> failures;  // one line per violated claim

  void pass(const std::string& what) { checks.push_back(what); }
  void fail(const std::string& what) {
    failures.push_back(what);
    ok = false;
  }
  void require(bool cond, const std::string& what) {
    if (cond)
      pass(what);
    else
      fail(what);
  }
};

namespace replay {

/// Closed-form Newton polytope of the counterexample function: the unit
/// cube on coordinates 1..n-2 together with e_{n-1} and e_n. All listed
/// points are extreme, so the sorted list is already canonical and can be
/// compared against a stored polytope without any LP.
inline RatMat counterexample_newton_points(std::size_t n) {
  RatMat pts;
  pts.reserve((std::size_t(1) << (n - 2)) + 2);
  for (std::size_t mask = 0; mask < (std::size_t(1) << (n - 2)); ++mask) {
    RatVec v = zero_vec(n);
    for (std::size_t j = 0; j + 2 < n; ++j)
      if (mask & (std::size_t(1) << j)) v[j] = 1;
    pts.push_back(std::move(v));
  }
  pts.push_back(unit_vec(n, n - 2));
  pts.push_back(unit_vec(n, n - 1));
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline void verify_hyperplane(const HyperplaneCertificate& cert, VerifyResult& out) {
  const Polytope& p = cert.newton;
  const std::size_t n = p.ambient_dim();
  const RatVec& c = cert.normal;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (parallel_nonzero(sub(p.points()[i], p.points()[j]), c)) pairs.emplace_back(i, j);
  out.require(pairs == cert.candidate_pairs,
              "candidate pairs match recomputation from the polytope and normal");
  out.require(cert.cones.size() == cert.candidate_pairs.size(),
              "one cone transcript per candidate pair");

  std::vector<std::size_t> contributing;
  for (std::size_t t = 0; t < cert.cones.size(); ++t) {
    const ConeTranscript& tr = cert.cones[t];
    RatMat rows;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (k != tr.vertex_a && k != tr.vertex_b)
        rows.push_back(sub(p.points()[tr.vertex_a], p.points()[k]));
    out.require(rows == tr.strict_rows, "cone " + std::to_string(t) + ": rows match the polytope");
    if (tr.contributes) {
      contributing.push_back(t);
      bool good = tr.witness.size() == n && dot(c, tr.witness) == 0;
      for (const auto& r : rows) good = good && dot(r, tr.witness) > 0;
      out.require(good, "cone " + std::to_string(t) +
                            ": witness lies in H and satisfies every strict row");
    } else {
      bool good = tr.blocker_strict.size() == rows.size() && tr.blocker_eq.size() == 1;
      Rat mass = 0;
      RatVec comb = zero_vec(n);
      if (good) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
          good = good && tr.blocker_strict[i] >= 0;
          mass += tr.blocker_strict[i];
          comb = add(comb, scaled(rows[i], tr.blocker_strict[i]));
        }
        comb = add(comb, scaled(c, tr.blocker_eq[0]));
      }
      out.require(good && mass == 1 && is_zero(comb),
                  "cone " + std::to_string(t) + ": blocker proves the cell is not (n-1)-dimensional");
    }
  }
  out.require(contributing == cert.contributing, "contributing cone list is consistent");

  if (cert.verdict == HyperplaneVerdict::NotInMaxN) {
    out.require(!contributing.empty(), "verdict NotInMaxN requires T nonempty");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool all_line_free = true;
    for (const LineCheckTranscript& lt : cert.line_checks) {
      seen.insert({lt.cone_i, lt.cone_j});
      if (lt.line_found) {
        all_line_free = false;
        continue;
      }
      const RatMat rows_u = detail::cone_rows(p, cert.cones[lt.cone_i].vertex_a);
      const RatMat rows_w = detail::cone_rows(p, cert.cones[lt.cone_j].vertex_a);
      std::set<std::pair<std::size_t, int>> axes;
      bool good = true;
      for (const auto& f : lt.farkas) {
        axes.insert({f.axis, f.sign});
        // rows: [c (eq)] + rows_u (>=0) + (-rows_w) (>=0) + [e_axis (eq)]
        const std::size_t m = 2 + rows_u.size() + rows_w.size();
        if (f.y.size() != m || f.axis >= n) {
          good = false;
          break;
        }
        RatVec comb = scaled(c, f.y[0]);
        for (std::size_t i = 0; i < rows_u.size(); ++i) {
          if (f.y[1 + i] < 0) good = false;
          comb = add(comb, scaled(rows_u[i], f.y[1 + i]));
        }
        for (std::size_t i = 0; i < rows_w.size(); ++i) {
          const Rat& yi = f.y[1 + rows_u.size() + i];
          if (yi < 0) good = false;
          comb = add(comb, scaled(negated(rows_w[i]), yi));
        }
        comb = add(comb, scaled(unit_vec(n, f.axis), f.y[m - 1]));
        good = good && is_zero(comb) && f.y[m - 1] * f.sign > 0;
      }
      good = good && axes.size() == 2 * n;
      out.require(good, "line check (" + std::to_string(lt.cone_i) + "," +
                            std::to_string(lt.cone_j) +
                            "): Farkas sweep covers all normalizations");
    }
    const std::size_t npairs = contributing.size() * contributing.size();
    out.require(all_line_free && seen.size() == npairs && cert.line_checks.size() == npairs,
                "line checks cover every ordered pair of contributing cones");
  } else {
    bool justified = contributing.empty();
    for (const LineCheckTranscript& lt : cert.line_checks) {
      if (!lt.line_found) continue;
      const RatVec& v = lt.direction;
      bool good = v.size() == n && !is_zero(v) && dot(c, v) == 0;
      for (const auto& r : detail::cone_rows(p, cert.cones[lt.cone_i].vertex_a))
        good = good && dot(r, v) >= 0;
      for (const auto& r : detail::cone_rows(p, cert.cones[lt.cone_j].vertex_a))
        good = good && dot(r, v) <= 0;
      if (good) justified = true;
    }
    out.require(justified, "verdict Inconclusive is justified (T empty or a line exhibited)");
  }
}

inline void verify_witness_structure(const ConstructionWitness& w, const ArchitectureSpec& spec,
                                     VerifyResult& out) {
  try {
    witness_structure(w, spec);
    out.pass("witness trace respects the recursive class (levels, ranks, indegrees)");
  } catch (const WitnessError& e) {
    out.fail(std::string("witness structure: ") + e.what());
  }
}

inline void verify_dim_bound_report(const Json& j, VerifyResult& out) {
  const ArchitectureSpec spec = spec_of_json(field(j, "spec"));
  const Int bound = prefix_dim_bound(spec, spec.depth);
  out.require(bound.str() == field(j, "bound").get<std::string>(),
              "bound equals the m_ell formula for the spec");
  const GradientCellSet cells = cells_of_json(field(j, "cells"));
  const std::size_t vdim = field(j, "v_dim").get<std::size_t>();
  out.require(gradient_rank(cells) == vdim, "v_dim equals the rank of the recorded gradients");
  out.require(field(j, "holds").get<bool>() == (Int(vdim) <= bound),
              "holds flag is consistent with v_dim <= bound");
  const VirtualPolytope newton = vpolytope_of_json(field(j, "newton"));
  const Polytope& p = newton.positive();
  const Polytope& q = newton.negative();
  bool wit_ok = true;
  for (const GradientCell& cell : cells) {
    // The witness direction must select a unique maximizer in each part,
    // and their difference must equal the recorded gradient.
    const auto argmax_unique = [&](const Polytope& poly, RatVec& arg) {
      std::size_t best = 0, count = 1;
      Rat val = dot(poly.points()[0], cell.witness);
      for (std::size_t i = 1; i < poly.size(); ++i) {
        const Rat v = dot(poly.points()[i], cell.witness);
        if (v > val)
          val = v, best = i, count = 1;
        else if (v == val)
          ++count;
      }
      arg = poly.points()[best];
      return count == 1;
    };
    RatVec a, b;
    if (!(argmax_unique(p, a) && argmax_unique(q, b) && sub(a, b) == cell.gradient)) wit_ok = false;
  }
  out.require(wit_ok, "every gradient has a cell witness selecting it uniquely");
}

inline void verify_width(const Json& j, VerifyResult& out) {
  const std::size_t n = field(j, "n").get<std::size_t>();
  const ArchitectureSpec spec = spec_of_json(field(j, "spec"));
  const Int m = prefix_dim_bound(spec, spec.depth);
  out.require(m.str() == field(j, "m_ell").get<std::string>(), "m_ell matches the bound formula");
  out.require(spec.depth >= 2 && Int(n) >= m + 1, "theorem hypotheses hold (depth >= 2, n >= m_ell + 1)");
  std::size_t rank2 = 0;
  for (std::size_t r : spec.rank)
    if (r >= 2) ++rank2;
  out.require(rank2 >= 2, "at least two layers of rank >= 2");

  const SparseMaxoutNetwork net = network_of_json(field(j, "network"));
  const SparseMaxoutNetwork expect = counterexample_network(n);
  out.require(json_of(net) == json_of(expect), "network is the canonical counterexample");
  out.require(validate(net).empty(), "network validates in N_n(2, r=2)");

  const VirtualPolytope newton = vpolytope_of_json(field(j, "newton"));
  out.require(newton.positive().points() == counterexample_newton_points(n) &&
                  newton.negative() == Polytope::origin(n),
              "Newton polytope equals the closed form (cube plus e_{n-1}, e_n)");

  const HyperplaneCertificate hp = hyperplane_cert_of_json(field(j, "hyperplane"));
  RatVec c = zero_vec(n);
  c[n - 2] = 1;
  c[n - 1] = -1;
  out.require(hp.normal == c, "hyperplane normal is e_{n-1} - e_n");
  out.require(hp.newton == newton.positive(), "hyperplane certificate tests the same polytope");
  verify_hyperplane(hp, out);
  out.require((field(j, "verdict").get<std::string>() == "NotInMaxN") ==
                  (hp.verdict == HyperplaneVerdict::NotInMaxN),
              "top-level verdict agrees with the hyperplane certificate");
}

inline void verify_attainment_claims(const ArchitectureSpec& spec, const RatVec& v,
                                     const std::vector<std::size_t>& I_zero_based,
                                     const Polytope& poly, const ConstructionWitness& w,
                                     VerifyResult& out, const std::string& tag) {
  const Int m = prefix_dim_bound(spec, spec.depth);
  out.require(Int(I_zero_based.size()) == m, tag + ": |I| equals m_ell");
  bool supp_ok = true;
  const std::set<std::size_t> I_set(I_zero_based.begin(), I_zero_based.end());
  for (const RatVec& pt : poly.points())
    for (std::size_t k = 0; k < pt.size(); ++k)
      if (pt[k] != v[k] && !I_set.count(k)) supp_ok = false;
  out.require(supp_ok, tag + ": every vertex lies in v + span{e_i : i in I}");
  out.require(poly_dim(poly) == I_zero_based.size(),
              tag + ": affine hull has full dimension m_ell");
  verify_witness_structure(w, spec, out);
  out.require(w.root_combination.size() == 1 && w.root_combination[0].second == 1 &&
                  w.root.positive() == poly && w.root.negative() == Polytope::origin(spec.input_dim),
              tag + ": witness root is the constructed polytope");
}

inline void verify_hierarchy(const Json& j, VerifyResult& out) {
  const std::size_t n = field(j, "n").get<std::size_t>();
  const std::vector<std::size_t> d = field(j, "d").get<std::vector<std::size_t>>();
  const std::vector<std::size_t> r = field(j, "r").get<std::vector<std::size_t>>();
  const auto d_of = [&](std::size_t layer) {
    return layer == 1 ? n : (layer - 1 < d.size() ? d[layer - 1] : (d.empty() ? n : d.back()));
  };
  const auto r_of = [&](std::size_t layer) {
    return layer - 1 < r.size() ? r[layer - 1] : r.back();
  };
  Int prev_bound = 0;
  std::size_t level = 0;
  for (const Json& jl : field(j, "levels")) {
    ArchitectureSpec spec;
    spec.input_dim = n;
    spec.depth = level;
    for (std::size_t l = 1; l <= level; ++l) {
      spec.indegree.push_back(d_of(l));
      spec.rank.push_back(r_of(l));
    }
    const Int m = prefix_dim_bound(spec, level);
    out.require(field(jl, "depth").get<std::size_t>() == level &&
                    field(jl, "bound").get<std::string>() == m.str() && m <= Int(n),
                "level " + std::to_string(level) + ": bound matches the formula and fits n");
    const Polytope poly = polytope_of_json(field(jl, "polytope"));
    const ConstructionWitness w = witness_of_json(field(jl, "witness"));
    std::vector<std::size_t> I(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < I.size(); ++i) I[i] = i;
    verify_attainment_claims(spec, zero_vec(n), I, poly, w, out, "level " + std::to_string(level));
    out.require(field(jl, "attained").get<std::size_t>() == poly_dim(poly),
                "level " + std::to_string(level) + ": attained dimension matches the polytope");
    out.require(field(jl, "strict_over_previous").get<bool>() == (level > 0 && m > prev_bound),
                "level " + std::to_string(level) + ": strictness flag follows the dimension obstruction");
    prev_bound = m;
    ++level;
  }
  // terminal: the next level's bound must exceed n
  ArchitectureSpec next;
  next.input_dim = n;
  next.depth = level;
  for (std::size_t l = 1; l <= level; ++l) {
    next.indegree.push_back(d_of(l));
    next.rank.push_back(r_of(l));
  }
  out.require(field(j, "terminal_level").get<std::size_t>() + 1 == level &&
                  prefix_dim_bound(next, level) > Int(n),
              "terminal level: the next bound exceeds n");
}

inline void verify_newton_result(const Json& j, VerifyResult& out) {
  const SparseMaxoutNetwork net = network_of_json(field(j, "network"));
  out.require(validate(net).empty(), "network validates against its spec");
  const VirtualPolytope v = vpolytope_of_json(field(j, "virtual_polytope"));
  const ConstructionWitness w = witness_of_json(field(j, "witness"));
  verify_witness_structure(w, net.spec, out);
  out.require(json_of(w.root) == json_of(v), "witness root equals the reported virtual polytope");
  // Deterministic sample identity f_V = net_eval (exact for every x; spot
  // checks here are arithmetic only).
  Rng rng(0x5eed);
  bool eq = true;
  for (int k = 0; k < 25; ++k) {
    const RatVec x = rng.vec(net.spec.input_dim);
    if (v_support(v, x) != net_eval(net, x)) eq = false;
  }
  out.require(eq, "support function agrees with network evaluation on sample points");
}

}  // namespace replay

inline VerifyResult verify_certificate(const Json& j) {
  VerifyResult out;
  const std::string kind = j.value("kind", "");
  if (kind == "hyperplane_certificate") {
    replay::verify_hyperplane(hyperplane_cert_of_json(j), out);
  } else if (kind == "dim_bound_report") {
    replay::verify_dim_bound_report(j, out);
  } else if (kind == "bound_sweep_report") {
    for (const Json& rep : field(j, "reports")) replay::verify_dim_bound_report(rep, out);
    bool all = true;
    for (const Json& rep : field(j, "reports"))
      if (!field(rep, "holds").get<bool>()) all = false;
    out.require(field(j, "all_hold").get<bool>() == all, "all_hold flag is consistent");
  } else if (kind == "width_certificate") {
    replay::verify_width(j, out);
  } else if (kind == "hierarchy_report") {
    replay::verify_hierarchy(j, out);
  } else if (kind == "attainment") {
    const ArchitectureSpec spec = spec_of_json(field(j, "spec"));
    const RatVec v = vec_of_json(field(j, "v"));
    std::vector<std::size_t> I;
    for (const Json& e : field(j, "I")) I.push_back(e.get<std::size_t>() - 1);
    const Polytope poly = polytope_of_json(field(j, "polytope"));
    const ConstructionWitness w = witness_of_json(field(j, "witness"));
    replay::verify_attainment_claims(spec, v, I, poly, w, out, "attainment");
    out.require(field(j, "dim").get<std::size_t>() == poly_dim(poly),
                "reported dimension matches the polytope");
  } else if (kind == "newton_result") {
    replay::verify_newton_result(j, out);
  } else {
    out.fail("unknown certificate kind \"" + kind + "\"");
  }
  return out;
}

}  // namespace vpoly
