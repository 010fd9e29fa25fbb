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

#include "vpoly/expressivity.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace vpoly {

/// Insertion-ordered JSON keeps emitted reports byte-stable across runs.
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars and vectors. Rationals travel as "p/q" strings ("/q" omitted when
// the denominator is 1) so no precision is ever lost.
// ---------------------------------------------------------------------------

inline Json json_of(const Rat& r) { return rat_to_string(r); }

inline Rat rat_of_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
  if (!j.is_string()) throw ParseError("expected rational as \"p/q\" string");
  return rat_from_string(j.get<std::string>());
}

inline Json json_of(const RatVec& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(json_of(x));
  return a;
}

inline RatVec vec_of_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected array of rationals");
  RatVec v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(rat_of_json(e));
  return v;
}

inline Json json_of(const RatMat& m) {
  Json a = Json::array();
  for (const RatVec& r : m) a.push_back(json_of(r));
  return a;
}

inline RatMat mat_of_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected array of vectors");
  RatMat m;
  m.reserve(j.size());
  for (const Json& e : j) m.push_back(vec_of_json(e));
  return m;
}

inline const Json& field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

// ---------------------------------------------------------------------------
// Polytopes and virtual polytopes.
// ---------------------------------------------------------------------------

inline Json json_of(const Polytope& p) {
  Json j;
  j["n"] = p.ambient_dim();
  j["points"] = json_of(p.points());
  return j;
}

inline Polytope polytope_of_json(const Json& j) {
  const std::size_t n = field(j, "n").get<std::size_t>();
  RatMat pts = mat_of_json(field(j, "points"));
  if (pts.empty()) throw ParseError("polytope needs at least one point");
  for (const auto& p : pts)
    if (p.size() != n) throw ParseError("polytope point dimension differs from n");
  return canonical_form(pts);
}

inline Json json_of(const VirtualPolytope& v) {
  Json j;
  j["positive"] = json_of(v.positive());
  j["negative"] = json_of(v.negative());
  return j;
}

inline VirtualPolytope vpolytope_of_json(const Json& j) {
  return VirtualPolytope(polytope_of_json(field(j, "positive")),
                         polytope_of_json(field(j, "negative")));
}

// ---------------------------------------------------------------------------
// Networks and MAX expressions.
// ---------------------------------------------------------------------------

inline Json json_of(const SparseMaxoutNetwork& net) {
  Json j;
  j["n"] = net.spec.input_dim;
  Json layers = Json::array();
  for (std::size_t l = 0; l < net.spec.depth; ++l) {
    Json jl;
    jl["d"] = net.spec.indegree[l];
    jl["r"] = net.spec.rank[l];
    Json neurons = Json::array();
    for (const MaxoutNeuron& u : net.layers[l]) {
      Json ju;
      ju["args"] = json_of(RatMat(u.args.begin(), u.args.end()));
      neurons.push_back(std::move(ju));
    }
    jl["neurons"] = std::move(neurons);
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  j["output"] = json_of(net.output);
  return j;
}

inline SparseMaxoutNetwork network_of_json(const Json& j) {
  SparseMaxoutNetwork net;
  net.spec.input_dim = field(j, "n").get<std::size_t>();
  const Json& layers = field(j, "layers");
  if (!layers.is_array()) throw ParseError("\"layers\" must be an array");
  net.spec.depth = layers.size();
  for (const Json& jl : layers) {
    net.spec.indegree.push_back(field(jl, "d").get<std::size_t>());
    net.spec.rank.push_back(field(jl, "r").get<std::size_t>());
    std::vector<MaxoutNeuron> layer;
    for (const Json& ju : field(jl, "neurons")) {
      MaxoutNeuron u;
      RatMat args = mat_of_json(field(ju, "args"));
      u.args.assign(args.begin(), args.end());
      layer.push_back(std::move(u));
    }
    net.layers.push_back(std::move(layer));
  }
  net.output = vec_of_json(field(j, "output"));
  return net;
}

inline Json json_of(const MaxExpression& e) {
  Json j;
  j["n"] = e.input_dim;
  Json terms = Json::array();
  for (const MaxTerm& t : e.terms) {
    Json jt;
    jt["beta"] = json_of(t.beta);
    jt["args"] = json_of(RatMat(t.args.begin(), t.args.end()));
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline MaxExpression expression_of_json(const Json& j) {
  MaxExpression e;
  e.input_dim = field(j, "n").get<std::size_t>();
  for (const Json& jt : field(j, "terms")) {
    MaxTerm t;
    t.beta = rat_of_json(field(jt, "beta"));
    RatMat args = mat_of_json(field(jt, "args"));
    t.args.assign(args.begin(), args.end());
    e.terms.push_back(std::move(t));
  }
  check_expression(e);
  return e;
}

inline Json json_of(const ArchitectureSpec& s) {
  Json j;
  j["n"] = s.input_dim;
  j["depth"] = s.depth;
  j["d"] = s.indegree;
  j["r"] = s.rank;
  return j;
}

inline ArchitectureSpec spec_of_json(const Json& j) {
  ArchitectureSpec s;
  s.input_dim = field(j, "n").get<std::size_t>();
  s.depth = field(j, "depth").get<std::size_t>();
  s.indegree = field(j, "d").get<std::vector<std::size_t>>();
  s.rank = field(j, "r").get<std::vector<std::size_t>>();
  check_spec(s);
  return s;
}

// ---------------------------------------------------------------------------
// Construction witnesses.
// ---------------------------------------------------------------------------

inline Json json_of(const ConstructionWitness& w) {
  Json j;
  Json nodes = Json::array();
  for (std::size_t id = 0; id < w.nodes.size(); ++id) {
    const WitnessNode& node = w.nodes[id];
    Json jn;
    jn["id"] = id;
    jn["level"] = node.level;
    jn["object"] = json_of(node.object);
    Json args = Json::array();
    for (const WitnessArg& a : node.args) {
      Json ja = Json::array();
      for (const auto& [child, alpha] : a.coeffs) {
        Json jc;
        jc["child"] = child;
        jc["alpha"] = json_of(alpha);
        ja.push_back(std::move(jc));
      }
      args.push_back(std::move(ja));
    }
    jn["args"] = std::move(args);
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  Json comb = Json::array();
  for (const auto& [node, beta] : w.root_combination) {
    Json jc;
    jc["node"] = node;
    jc["beta"] = json_of(beta);
    comb.push_back(std::move(jc));
  }
  j["root_combination"] = std::move(comb);
  j["root"] = json_of(w.root);
  return j;
}

inline ConstructionWitness witness_of_json(const Json& j) {
  ConstructionWitness w;
  for (const Json& jn : field(j, "nodes")) {
    WitnessNode node;
    node.level = field(jn, "level").get<std::size_t>();
    node.object = vpolytope_of_json(field(jn, "object"));
    for (const Json& ja : field(jn, "args")) {
      WitnessArg arg;
      for (const Json& jc : ja)
        arg.coeffs.emplace_back(field(jc, "child").get<std::size_t>(),
                                rat_of_json(field(jc, "alpha")));
      node.args.push_back(std::move(arg));
    }
    w.nodes.push_back(std::move(node));
  }
  for (const Json& jc : field(j, "root_combination"))
    w.root_combination.emplace_back(field(jc, "node").get<std::size_t>(),
                                    rat_of_json(field(jc, "beta")));
  w.root = vpolytope_of_json(field(j, "root"));
  return w;
}

// ---------------------------------------------------------------------------
// Gradient cells and reports.
// ---------------------------------------------------------------------------

inline Json json_of(const GradientCellSet& cells) {
  Json a = Json::array();
  for (const GradientCell& c : cells) {
    Json jc;
    jc["gradient"] = json_of(c.gradient);
    jc["witness"] = json_of(c.witness);
    a.push_back(std::move(jc));
  }
  return a;
}

inline GradientCellSet cells_of_json(const Json& j) {
  GradientCellSet cells;
  for (const Json& jc : j)
    cells.push_back({vec_of_json(field(jc, "gradient")), vec_of_json(field(jc, "witness"))});
  return cells;
}

inline Json json_of(const DimBoundReport& rep, const VirtualPolytope& newton) {
  Json j;
  j["kind"] = "dim_bound_report";
  j["spec"] = json_of(rep.spec);
  j["v_dim"] = rep.computed_dim;
  j["bound"] = rep.bound.str();
  j["holds"] = rep.holds;
  j["newton"] = json_of(newton);
  j["cells"] = json_of(rep.cells);
  return j;
}

inline Json json_of(const HyperplaneCertificate& cert) {
  Json j;
  j["kind"] = "hyperplane_certificate";
  j["normal"] = json_of(cert.normal);
  j["newton"] = json_of(cert.newton);
  Json pairs = Json::array();
  for (const auto& [a, b] : cert.candidate_pairs) pairs.push_back({a, b});
  j["candidate_pairs"] = std::move(pairs);
  Json cones = Json::array();
  for (const ConeTranscript& tr : cert.cones) {
    Json jt;
    jt["vertex_a"] = tr.vertex_a;
    jt["vertex_b"] = tr.vertex_b;
    jt["strict_rows"] = json_of(tr.strict_rows);
    jt["contributes"] = tr.contributes;
    if (tr.contributes) {
      jt["witness"] = json_of(tr.witness);
    } else {
      jt["blocker_strict"] = json_of(tr.blocker_strict);
      jt["blocker_eq"] = json_of(tr.blocker_eq);
    }
    cones.push_back(std::move(jt));
  }
  j["cones"] = std::move(cones);
  j["contributing"] = cert.contributing;
  Json checks = Json::array();
  for (const LineCheckTranscript& lt : cert.line_checks) {
    Json jl;
    jl["cone_i"] = lt.cone_i;
    jl["cone_j"] = lt.cone_j;
    jl["line_found"] = lt.line_found;
    if (lt.line_found) {
      jl["direction"] = json_of(lt.direction);
    } else {
      Json fa = Json::array();
      for (const auto& f : lt.farkas) {
        Json jf;
        jf["axis"] = f.axis;
        jf["sign"] = f.sign;
        jf["y"] = json_of(f.y);
        fa.push_back(std::move(jf));
      }
      jl["farkas"] = std::move(fa);
    }
    checks.push_back(std::move(jl));
  }
  j["line_checks"] = std::move(checks);
  j["verdict"] = cert.verdict == HyperplaneVerdict::NotInMaxN ? "NotInMaxN" : "Inconclusive";
  j["reason"] = cert.reason;
  return j;
}

inline HyperplaneCertificate hyperplane_cert_of_json(const Json& j) {
  HyperplaneCertificate cert;
  cert.normal = vec_of_json(field(j, "normal"));
  cert.newton = polytope_of_json(field(j, "newton"));
  for (const Json& p : field(j, "candidate_pairs"))
    cert.candidate_pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  for (const Json& jt : field(j, "cones")) {
    ConeTranscript tr;
    tr.vertex_a = field(jt, "vertex_a").get<std::size_t>();
    tr.vertex_b = field(jt, "vertex_b").get<std::size_t>();
    tr.strict_rows = mat_of_json(field(jt, "strict_rows"));
    tr.contributes = field(jt, "contributes").get<bool>();
    if (tr.contributes) {
      tr.witness = vec_of_json(field(jt, "witness"));
    } else {
      tr.blocker_strict = vec_of_json(field(jt, "blocker_strict"));
      tr.blocker_eq = vec_of_json(field(jt, "blocker_eq"));
    }
    cert.cones.push_back(std::move(tr));
  }
  cert.contributing = field(j, "contributing").get<std::vector<std::size_t>>();
  for (const Json& jl : field(j, "line_checks")) {
    LineCheckTranscript lt;
    lt.cone_i = field(jl, "cone_i").get<std::size_t>();
    lt.cone_j = field(jl, "cone_j").get<std::size_t>();
    lt.line_found = field(jl, "line_found").get<bool>();
    if (lt.line_found) {
      lt.direction = vec_of_json(field(jl, "direction"));
    } else {
      for (const Json& jf : field(jl, "farkas"))
        lt.farkas.push_back({field(jf, "axis").get<std::size_t>(), field(jf, "sign").get<int>(),
                             vec_of_json(field(jf, "y"))});
    }
    cert.line_checks.push_back(std::move(lt));
  }
  const std::string verdict = field(j, "verdict").get<std::string>();
  cert.verdict =
      verdict == "NotInMaxN" ? HyperplaneVerdict::NotInMaxN : HyperplaneVerdict::Inconclusive;
  cert.reason = j.value("reason", "");
  return cert;
}

inline Json json_of(const WidthCertificate& cert) {
  Json j;
  j["kind"] = "width_certificate";
  j["n"] = cert.n;
  j["spec"] = json_of(cert.spec);
  j["m_ell"] = cert.m_ell.str();
  j["network"] = json_of(cert.network);
  j["newton"] = json_of(cert.newton);
  j["hyperplane"] = json_of(cert.hyperplane);
  j["verdict"] = cert.not_in_max_n ? "NotInMaxN" : "Inconclusive";
  j["conclusion"] = cert.conclusion;
  return j;
}

inline Json json_of(const HierarchyReport& rep) {
  Json j;
  j["kind"] = "hierarchy_report";
  j["n"] = rep.n;
  j["d"] = rep.indegree;
  j["r"] = rep.rank;
  Json levels = Json::array();
  for (const HierarchyLevel& lv : rep.levels) {
    Json jl;
    jl["depth"] = lv.depth;
    jl["bound"] = lv.bound.str();
    jl["attained"] = lv.attained;
    jl["strict_over_previous"] = lv.strict_over_previous;
    jl["polytope"] = json_of(lv.polytope);
    jl["witness"] = json_of(lv.witness);
    levels.push_back(std::move(jl));
  }
  j["levels"] = std::move(levels);
  j["terminal_level"] = rep.terminal_level;
  return j;
}

inline Json json_of_attainment(const ArchitectureSpec& spec, const RatVec& v,
                               const std::vector<std::size_t>& I, const Polytope& poly,
                               const ConstructionWitness& w) {
  Json j;
  j["kind"] = "attainment";
  j["spec"] = json_of(spec);
  j["v"] = json_of(v);
  Json ji = Json::array();
  for (std::size_t i : I) ji.push_back(i + 1);  // 1-based on the wire
  j["I"] = std::move(ji);
  j["m_ell"] = dim_bound(spec).str();
  j["polytope"] = json_of(poly);
  j["dim"] = poly_dim(poly);
  j["witness"] = json_of(w);
  return j;
}

inline Json json_of_newton_result(const SparseMaxoutNetwork& net, const VirtualPolytope& v,
                                  const ConstructionWitness& w) {
  Json j;
  j["kind"] = "newton_result";
  j["network"] = json_of(net);
  j["virtual_polytope"] = json_of(v);
  j["witness"] = json_of(w);
  return j;
}

}  // namespace vpoly
