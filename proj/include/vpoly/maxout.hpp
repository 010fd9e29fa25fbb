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

#include "vpoly/virtual_polytope.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vpoly {

class StructuralError : public std::invalid_argument {
public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidNetwork : public std::invalid_argument {
public:
  explicit InvalidNetwork(const std::string& what) : std::invalid_argument(what) {}
};

class InsufficientDepth : public std::invalid_argument {
public:
  explicit InsufficientDepth(const std::string& what) : std::invalid_argument(what) {}
};

class HypothesisUnmet : public std::invalid_argument {
public:
  explicit HypothesisUnmet(const std::string& what) : std::invalid_argument(what) {}
};

/// Architecture parameters (n, ell, d, r). The first hidden layer is fully
/// connected, so indegree[0] == input_dim by convention.
struct ArchitectureSpec {
  std::size_t input_dim = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> indegree;  // size depth
  std::vector<std::size_t> rank;      // size depth

  bool operator==(const ArchitectureSpec&) const = default;
};

inline void check_spec(const ArchitectureSpec& s) {
  if (s.input_dim == 0) throw StructuralError("input dimension must be positive");
  if (s.indegree.size() != s.depth || s.rank.size() != s.depth)
    throw StructuralError("indegree/rank vectors must have one entry per hidden layer");
  if (s.depth > 0 && s.indegree[0] != s.input_dim)
    throw StructuralError("first hidden layer is fully connected: d_1 must equal n");
  for (std::size_t i = 0; i < s.depth; ++i)
    if (s.indegree[i] == 0 || s.rank[i] == 0)
      throw StructuralError("indegree and rank entries must be positive");
}

/// m_ell for the depth-`ell` prefix: sum_{k=1}^{ell} (r_k - 1) prod_{i=k+1}^{ell} d_i.
inline Int prefix_dim_bound(const ArchitectureSpec& s, std::size_t ell) {
  if (ell > s.depth) throw StructuralError("prefix level exceeds spec depth");
  Int total = 0;
  Int suffix_product = 1;  // prod_{i=k+1}^{ell} d_i, built from the top
  for (std::size_t k = ell; k >= 1; --k) {
    total += Int(s.rank[k - 1] - 1) * suffix_product;
    suffix_product *= Int(s.indegree[k - 1]);
  }
  return total;
}

/// One maxout unit: max over its argument weight vectors, each over the
/// previous layer's outputs.
struct MaxoutNeuron {
  std::vector<RatVec> args;
};

struct SparseMaxoutNetwork {
  ArchitectureSpec spec;
  std::vector<std::vector<MaxoutNeuron>> layers;
  RatVec output;  // linear functional over the last hidden layer (or inputs)
};

struct Violation {
  std::size_t layer = 0;   // 1-based hidden layer
  std::size_t neuron = 0;  // 0-based within the layer
  enum Kind { Indegree, Rank } kind = Indegree;
  std::size_t actual = 0, allowed = 0;

  std::string to_string() const {
    return std::string(kind == Indegree ? "indegree" : "rank") + " violation at layer " +
           std::to_string(layer) + ", neuron " + std::to_string(neuron) + ": " +
           std::to_string(actual) + " > " + std::to_string(allowed);
  }
};

inline std::size_t layer_width(const SparseMaxoutNetwork& net, std::size_t layer_1based) {
  return layer_1based == 0 ? net.spec.input_dim : net.layers[layer_1based - 1].size();
}

/// Throws StructuralError on malformed widths; otherwise reports every
/// indegree/rank violation. The first hidden layer never reports indegree
/// violations (it is fully connected by convention).
inline std::vector<Violation> validate(const SparseMaxoutNetwork& net) {
  check_spec(net.spec);
  if (net.layers.size() != net.spec.depth)
    throw StructuralError("layer count does not match spec depth");
  std::vector<Violation> out;
  for (std::size_t l = 1; l <= net.spec.depth; ++l) {
    const std::size_t prev = layer_width(net, l - 1);
    if (net.layers[l - 1].empty()) throw StructuralError("hidden layer " + std::to_string(l) + " is empty");
    for (std::size_t u = 0; u < net.layers[l - 1].size(); ++u) {
      const MaxoutNeuron& neuron = net.layers[l - 1][u];
      if (neuron.args.empty())
        throw StructuralError("neuron without arguments at layer " + std::to_string(l));
      std::set<std::size_t> support;
      for (const RatVec& a : neuron.args) {
        if (a.size() != prev)
          throw StructuralError("argument width mismatch at layer " + std::to_string(l));
        for (std::size_t k = 0; k < prev; ++k)
          if (a[k] != 0) support.insert(k);
      }
      if (neuron.args.size() > net.spec.rank[l - 1])
        out.push_back({l, u, Violation::Rank, neuron.args.size(), net.spec.rank[l - 1]});
      if (l >= 2 && support.size() > net.spec.indegree[l - 1])
        out.push_back({l, u, Violation::Indegree, support.size(), net.spec.indegree[l - 1]});
    }
  }
  if (net.output.size() != layer_width(net, net.spec.depth))
    throw StructuralError("output functional width mismatch");
  return out;
}

/// Exact forward evaluation: layerwise max of dot products, then the output
/// functional.
inline Rat net_eval(const SparseMaxoutNetwork& net, const RatVec& x) {
  if (x.size() != net.spec.input_dim)
    throw DimensionMismatch("net_eval: input dimension mismatch");
  RatVec cur = x;
  for (const auto& layer : net.layers) {
    RatVec next(layer.size());
    for (std::size_t u = 0; u < layer.size(); ++u) {
      Rat best = dot(layer[u].args[0], cur);
      for (std::size_t a = 1; a < layer[u].args.size(); ++a) {
        Rat v = dot(layer[u].args[a], cur);
        if (v > best) best = v;
      }
      next[u] = std::move(best);
    }
    cur = std::move(next);
  }
  return dot(net.output, cur);
}

// ---------------------------------------------------------------------------
// Construction witnesses: a trace through the recursive virtual-polytope
// class. Node 0..k are in topological order (children precede parents);
// level-0 nodes are singletons, a level-l node is the convex hull of signed
// combinations of level-(l-1) nodes, and the root is a signed combination of
// top-level nodes.
// ---------------------------------------------------------------------------

struct WitnessArg {
  std::vector<std::pair<std::size_t, Rat>> coeffs;  // (child node id, alpha)
};

struct WitnessNode {
  std::size_t level = 0;
  VirtualPolytope object = VirtualPolytope::zero(1);
  std::vector<WitnessArg> args;  // empty for level-0 nodes
};

struct ConstructionWitness {
  std::vector<WitnessNode> nodes;
  std::vector<std::pair<std::size_t, Rat>> root_combination;  // (node id, beta)
  VirtualPolytope root = VirtualPolytope::zero(1);
};

class WitnessError : public std::logic_error {
public:
  explicit WitnessError(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline VirtualPolytope signed_combination(const std::vector<std::pair<std::size_t, Rat>>& coeffs,
                                          const std::vector<WitnessNode>& nodes, std::size_t n) {
  VirtualPolytope acc = VirtualPolytope::zero(n);
  for (const auto& [child, alpha] : coeffs)
    acc = v_add(acc, v_scale(nodes[child].object, alpha));
  return acc;
}

}  // namespace detail

/// Structural half of witness validation: level-0 nodes are singletons and
/// a level-l node takes at most rank[l-1] arguments over at most
/// indegree[l-1] distinct children of level l-1. Pure arithmetic, no LPs.
inline void witness_structure(const ConstructionWitness& w, const ArchitectureSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.input_dim;
  for (std::size_t id = 0; id < w.nodes.size(); ++id) {
    const WitnessNode& node = w.nodes[id];
    if (node.object.ambient_dim() != n) throw WitnessError("node ambient dimension mismatch");
    if (node.level == 0) {
      if (!node.args.empty()) throw WitnessError("level-0 node with arguments");
      if (node.object.positive().size() != 1 || node.object.negative().size() != 1 ||
          !is_zero(node.object.negative().points()[0]))
        throw WitnessError("level-0 node is not a singleton");
      continue;
    }
    if (node.level > spec.depth) throw WitnessError("node level exceeds spec depth");
    if (node.args.empty()) throw WitnessError("inner node without arguments");
    if (node.args.size() > spec.rank[node.level - 1])
      throw WitnessError("node exceeds rank bound of its level");
    std::set<std::size_t> children;
    for (const WitnessArg& arg : node.args)
      for (const auto& [child, alpha] : arg.coeffs) {
        if (child >= id) throw WitnessError("node references a non-preceding child");
        if (w.nodes[child].level + 1 != node.level)
          throw WitnessError("child level must be one below the node level");
        if (alpha != 0) children.insert(child);
      }
    if (children.size() > spec.indegree[node.level - 1])
      throw WitnessError("node exceeds indegree bound of its level");
  }
  for (const auto& [node, beta] : w.root_combination) {
    (void)beta;
    if (node >= w.nodes.size()) throw WitnessError("root combination references unknown node");
  }
}

/// Full witness validation: the structural checks plus re-derivation of
/// every node object from its children, compared up to virtual-polytope
/// equivalence.
inline void validate_witness(const ConstructionWitness& w, const ArchitectureSpec& spec) {
  witness_structure(w, spec);
  const std::size_t n = spec.input_dim;
  for (std::size_t id = 0; id < w.nodes.size(); ++id) {
    const WitnessNode& node = w.nodes[id];
    if (node.level == 0) continue;
    VirtualPolytope expect = detail::signed_combination(node.args[0].coeffs, w.nodes, n);
    for (std::size_t a = 1; a < node.args.size(); ++a)
      expect = v_conv(expect, detail::signed_combination(node.args[a].coeffs, w.nodes, n));
    if (!v_equals(expect, node.object)) throw WitnessError("node object does not match recomputation");
  }
  VirtualPolytope root = detail::signed_combination(w.root_combination, w.nodes, n);
  if (!v_equals(root, w.root)) throw WitnessError("root object does not match recomputation");
}

/// Newton virtual polytope of the computed function, built neuron by neuron
/// in the virtual algebra: level-0 objects are the coordinate singletons,
/// each neuron is the v_conv of the signed combinations given by its
/// argument weights, and the output functional forms the root combination.
/// By construction v_support(result, x) = net_eval(net, x) for all x.
inline std::pair<VirtualPolytope, ConstructionWitness> newton_extract(const SparseMaxoutNetwork& net) {
  {
    const std::vector<Violation> bad = validate(net);
    if (!bad.empty()) throw InvalidNetwork("newton_extract: " + bad.front().to_string());
  }
  const std::size_t n = net.spec.input_dim;
  ConstructionWitness w;
  std::vector<std::size_t> prev_ids(n);
  for (std::size_t j = 0; j < n; ++j) {
    prev_ids[j] = w.nodes.size();
    w.nodes.push_back({0, VirtualPolytope::point(unit_vec(n, j)), {}});
  }
  for (std::size_t l = 1; l <= net.spec.depth; ++l) {
    std::vector<std::size_t> ids;
    ids.reserve(net.layers[l - 1].size());
    for (const MaxoutNeuron& neuron : net.layers[l - 1]) {
      WitnessNode node;
      node.level = l;
      std::vector<VirtualPolytope> combos;
      for (const RatVec& a : neuron.args) {
        WitnessArg arg;
        for (std::size_t k = 0; k < a.size(); ++k)
          if (a[k] != 0) arg.coeffs.emplace_back(prev_ids[k], a[k]);
        combos.push_back(detail::signed_combination(arg.coeffs, w.nodes, n));
        node.args.push_back(std::move(arg));
      }
      VirtualPolytope obj = combos[0];
      for (std::size_t a = 1; a < combos.size(); ++a) obj = v_conv(obj, combos[a]);
      node.object = std::move(obj);
      ids.push_back(w.nodes.size());
      w.nodes.push_back(std::move(node));
    }
    prev_ids = std::move(ids);
  }
  for (std::size_t k = 0; k < net.output.size(); ++k)
    if (net.output[k] != 0) w.root_combination.emplace_back(prev_ids[k], net.output[k]);
  w.root = detail::signed_combination(w.root_combination, w.nodes, n);
  return {w.root, std::move(w)};
}

// ---------------------------------------------------------------------------
// MAX expressions: f(x) = sum_i beta_i max_j a_ij . x
// ---------------------------------------------------------------------------

struct MaxTerm {
  Rat beta;
  std::vector<RatVec> args;  // nonempty, each of the input dimension
};

struct MaxExpression {
  std::size_t input_dim = 0;
  std::vector<MaxTerm> terms;

  std::size_t max_rank() const {
    std::size_t m = 0;
    for (const auto& t : terms) m = std::max(m, t.args.size());
    return m;
  }
};

inline void check_expression(const MaxExpression& e) {
  if (e.input_dim == 0) throw StructuralError("expression input dimension must be positive");
  for (const auto& t : e.terms) {
    if (t.args.empty()) throw StructuralError("expression term without arguments");
    for (const auto& a : t.args)
      if (a.size() != e.input_dim) throw StructuralError("expression argument dimension mismatch");
  }
}

inline Rat expr_eval(const MaxExpression& e, const RatVec& x) {
  if (x.size() != e.input_dim) throw DimensionMismatch("expr_eval: input dimension mismatch");
  Rat total = 0;
  for (const auto& t : e.terms) {
    Rat best = dot(t.args[0], x);
    for (std::size_t j = 1; j < t.args.size(); ++j) {
      Rat v = dot(t.args[j], x);
      if (v > best) best = v;
    }
    total += t.beta * best;
  }
  return total;
}

/// sum_i beta_i (conv{a_ij} - {0}) in the virtual algebra; the support
/// function equals the expression value everywhere.
inline VirtualPolytope expr_to_virtual(const MaxExpression& e) {
  check_expression(e);
  VirtualPolytope acc = VirtualPolytope::zero(e.input_dim);
  for (const auto& t : e.terms)
    acc = v_add(acc, v_scale(VirtualPolytope::from_polytope(canonical_form(t.args)), t.beta));
  return acc;
}

/// Realizes the expression as an indegree-d / rank-r network: layer 1
/// computes the maxima of groups of up to r_1 linear forms (it is fully
/// connected, so its group size is not limited by the indegree), later
/// layers reduce each term with min(d_i, r_i)-ary max trees of unit weights,
/// and the output layer applies the betas. Capacity r_1 prod_{i>=2}
/// min(d_i, r_i) must cover the max-rank.
inline SparseMaxoutNetwork expr_to_network(const MaxExpression& e, const ArchitectureSpec& spec) {
  check_expression(e);
  check_spec(spec);
  if (spec.input_dim != e.input_dim)
    throw StructuralError("expr_to_network: spec input dimension differs from expression");
  Int capacity = 1;
  for (std::size_t i = 1; i <= spec.depth; ++i)
    capacity *= Int(i == 1 ? spec.rank[0] : std::min(spec.indegree[i - 1], spec.rank[i - 1]));
  if (Int(e.max_rank()) > capacity)
    throw InsufficientDepth("expression max-rank " + std::to_string(e.max_rank()) +
                            " exceeds architecture capacity " + capacity.str());

  SparseMaxoutNetwork net;
  net.spec = spec;
  net.layers.resize(spec.depth);
  const std::size_t p = e.terms.size();
  if (spec.depth == 0) {
    net.output = zero_vec(e.input_dim);
    for (const auto& t : e.terms)
      net.output = add(net.output, scaled(t.args[0], t.beta));
    return net;
  }
  // per-term list of output indices in the layer being built
  std::vector<std::vector<std::size_t>> slots(p);
  {
    const std::size_t g1 = spec.rank[0];
    for (std::size_t t = 0; t < p; ++t) {
      const auto& args = e.terms[t].args;
      for (std::size_t begin = 0; begin < args.size(); begin += g1) {
        MaxoutNeuron neuron;
        for (std::size_t j = begin; j < std::min(begin + g1, args.size()); ++j)
          neuron.args.push_back(args[j]);
        slots[t].push_back(net.layers[0].size());
        net.layers[0].push_back(std::move(neuron));
      }
    }
  }
  for (std::size_t l = 2; l <= spec.depth; ++l) {
    const std::size_t g = std::min(spec.indegree[l - 1], spec.rank[l - 1]);
    const std::size_t prev_width = net.layers[l - 2].size();
    for (std::size_t t = 0; t < p; ++t) {
      std::vector<std::size_t> next;
      for (std::size_t begin = 0; begin < slots[t].size(); begin += g) {
        MaxoutNeuron neuron;
        for (std::size_t j = begin; j < std::min(begin + g, slots[t].size()); ++j)
          neuron.args.push_back(unit_vec(prev_width, slots[t][j]));
        next.push_back(net.layers[l - 1].size());
        net.layers[l - 1].push_back(std::move(neuron));
      }
      slots[t] = std::move(next);
    }
  }
  net.output = zero_vec(net.layers[spec.depth - 1].size());
  for (std::size_t t = 0; t < p; ++t) {
    if (slots[t].size() != 1) throw std::logic_error("expr_to_network: term not fully reduced");
    net.output[slots[t][0]] += e.terms[t].beta;
  }
  if (p == 0) {
    // keep the network structurally valid: a single pass-through neuron per layer
    RatVec first = zero_vec(e.input_dim);
    net.layers[0].push_back({{first}});
    for (std::size_t l = 2; l <= spec.depth; ++l)
      net.layers[l - 1].push_back({{unit_vec(net.layers[l - 2].size(), 0)}});
    net.output = zero_vec(1);
  }
  return net;
}

/// The width-cannot-compensate function max{sum_j max{0,x_j}, x_{n-1}, x_n}
/// as a two-hidden-layer rank-2 network: layer 1 computes max{0, x_j} for
/// j <= n-2 and max{x_{n-1}, x_n}, layer 2 takes the max of the summed
/// rectifier outputs and that pairwise max.
inline SparseMaxoutNetwork counterexample_network(std::size_t n) {
  if (n < 3) throw HypothesisUnmet("counterexample_network requires n >= 3");
  SparseMaxoutNetwork net;
  net.spec.input_dim = n;
  net.spec.depth = 2;
  net.spec.indegree = {n, n - 1};
  net.spec.rank = {2, 2};
  net.layers.resize(2);
  for (std::size_t j = 0; j + 2 < n; ++j)
    net.layers[0].push_back({{zero_vec(n), unit_vec(n, j)}});
  net.layers[0].push_back({{unit_vec(n, n - 2), unit_vec(n, n - 1)}});
  const std::size_t w1 = n - 1;
  RatVec sum_row = zero_vec(w1);
  for (std::size_t j = 0; j + 1 < w1; ++j) sum_row[j] = 1;
  net.layers[1].push_back({{std::move(sum_row), unit_vec(w1, w1 - 1)}});
  net.output = {Rat(1)};
  return net;
}

// ---------------------------------------------------------------------------
// Attainment of the dimension bound: a polytope in the recursive class whose
// affine hull is exactly v + span{e_i : i in I}, |I| = m_ell.
// ---------------------------------------------------------------------------

namespace detail {

struct AttainBuilder {
  const ArchitectureSpec& spec;
  ConstructionWitness& w;
  std::map<RatVec, std::size_t> point_nodes;  // shared level-0 singletons

  std::size_t point_node(const RatVec& v) {
    auto it = point_nodes.find(v);
    if (it != point_nodes.end()) return it->second;
    const std::size_t id = w.nodes.size();
    w.nodes.push_back({0, VirtualPolytope::point(v), {}});
    point_nodes.emplace(v, id);
    return id;
  }

  /// Witness arg expressing the point as a combination of coordinate
  /// singletons (used by the fully connected first level).
  WitnessArg coordinate_combination(const RatVec& v) {
    WitnessArg arg;
    const std::size_t n = spec.input_dim;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] != 0) arg.coeffs.emplace_back(point_node(unit_vec(n, j)), v[j]);
    return arg;
  }

  // Returns (node id, polytope). I is sorted ascending; |I| = m_level.
  std::pair<std::size_t, Polytope> build(std::size_t level, const RatVec& v,
                                         const std::vector<std::size_t>& I) {
    const std::size_t n = spec.input_dim;
    if (level == 0) {
      return {point_node(v), Polytope::singleton(v)};
    }
    const std::size_t r = spec.rank[level - 1];
    if (level == 1) {
      // conv({v} u {v + e_j : j in J}): the simplex on the r-1 tail indices,
      // written as combinations of coordinate singletons.
      WitnessNode node;
      node.level = 1;
      RatMat points;
      for (std::size_t i = 0; i + 1 < r; ++i) {
        RatVec pt = add(v, unit_vec(n, I[i]));
        node.args.push_back(coordinate_combination(pt));
        points.push_back(std::move(pt));
      }
      node.args.push_back(coordinate_combination(v));
      points.push_back(v);
      Polytope poly = canonical_form(points);
      node.object = VirtualPolytope::from_polytope(poly);
      const std::size_t id = w.nodes.size();
      w.nodes.push_back(std::move(node));
      return {id, std::move(poly)};
    }
    const std::size_t d = spec.indegree[level - 1];
    const Int m_prev = prefix_dim_bound(spec, level - 1);
    const std::size_t mp = static_cast<std::size_t>(m_prev);
    // ascending-order split: d blocks of size m_{level-1}, then the r-1 tail J
    std::vector<std::vector<std::size_t>> blocks(d);
    for (std::size_t k = 0; k < d; ++k)
      blocks[k].assign(I.begin() + static_cast<long>(k * mp),
                       I.begin() + static_cast<long>((k + 1) * mp));
    std::vector<std::size_t> J(I.begin() + static_cast<long>(d * mp), I.end());
    // reference points: t_r = (v - sum e_{j_s})/r, t_i = t_r + e_{j_i} for
    // i < r, and t_k = 0 for k > r
    RatVec t_r = v;
    for (std::size_t j : J) t_r[j] -= 1;
    t_r = scaled(t_r, Rat(1, static_cast<long>(r)));
    std::vector<RatVec> t(d);
    for (std::size_t k = 0; k < d; ++k) {
      if (k + 1 < r)
        t[k] = add(t_r, unit_vec(n, J[k]));
      else if (k + 1 == r)
        t[k] = t_r;
      else
        t[k] = zero_vec(n);
    }
    std::vector<std::size_t> child_ids(d);
    std::vector<Polytope> child_polys;
    child_polys.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
      auto [id, poly] = build(level - 1, t[k], blocks[k]);
      child_ids[k] = id;
      child_polys.push_back(std::move(poly));
    }
    // Q_i = P_i + sum_{k != r} P_k for i < r, Q_r = sum_k P_k
    WitnessNode node;
    node.level = level;
    std::vector<Polytope> hull_parts;
    for (std::size_t i = 0; i < r; ++i) {
      WitnessArg arg;
      Polytope q = Polytope::origin(n);
      for (std::size_t k = 0; k < d; ++k) {
        std::size_t count = (k + 1 != r ? 1 : 0) + (i + 1 < r && k == i ? 1 : 0) +
                            (i + 1 == r && k + 1 == r ? 1 : 0);
        if (count == 0) continue;
        arg.coeffs.emplace_back(child_ids[k], Rat(static_cast<long>(count)));
        q = minkowski_sum(q, count == 1 ? child_polys[k] : scale(child_polys[k], Rat(2)));
      }
      node.args.push_back(std::move(arg));
      hull_parts.push_back(std::move(q));
    }
    Polytope poly = hull_parts[0];
    for (std::size_t i = 1; i < hull_parts.size(); ++i) poly = convex_union(poly, hull_parts[i]);
    node.object = VirtualPolytope::from_polytope(poly);
    const std::size_t id = w.nodes.size();
    w.nodes.push_back(std::move(node));
    return {id, std::move(poly)};
  }
};

}  // namespace detail

/// Builds a polytope of the recursive class whose affine hull is exactly
/// v + span{e_i : i in I} with |I| = m_ell, following the reference-point
/// scheme with deterministic ascending index splits. Requires d_i >= r_i for
/// i >= 2 (the fully connected first layer needs no such condition).
inline std::pair<Polytope, ConstructionWitness> attainment_construct(
    const ArchitectureSpec& spec, const RatVec& v, std::vector<std::size_t> I) {
  check_spec(spec);
  const std::size_t n = spec.input_dim;
  if (v.size() != n) throw StructuralError("attainment_construct: v dimension mismatch");
  for (std::size_t i = 2; i <= spec.depth; ++i)
    if (spec.rank[i - 1] > spec.indegree[i - 1])
      throw HypothesisUnmet("attainment requires r_i <= d_i for layers i >= 2");
  std::sort(I.begin(), I.end());
  if (std::adjacent_find(I.begin(), I.end()) != I.end())
    throw StructuralError("attainment_construct: duplicate indices in I");
  if (!I.empty() && I.back() >= n)
    throw StructuralError("attainment_construct: index set exceeds ambient dimension");
  const Int m = prefix_dim_bound(spec, spec.depth);
  if (Int(I.size()) != m)
    throw HypothesisUnmet("attainment requires |I| = m_ell = " + m.str());

  ConstructionWitness w;
  detail::AttainBuilder builder{spec, w, {}};
  auto [root_id, poly] = builder.build(spec.depth, v, I);
  w.root_combination = {{root_id, Rat(1)}};
  w.root = w.nodes[root_id].object;
  return {std::move(poly), std::move(w)};
}

}  // namespace vpoly
