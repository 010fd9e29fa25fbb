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

#include <cstdint>
#include <random>
#include <vector>

namespace vpoly {

/// Seed-determined generator for test sweeps. mt19937_64 has a fully
/// specified sequence and the draws below avoid std distributions, so a seed
/// reproduces instances bit-for-bit on any platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [lo, hi] via rejection sampling.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t range = hi - lo + 1;
    if (range == 0) return eng_();  // full range
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % range;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return lo + v % range;
  }

  std::size_t index(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(uniform(lo, hi));
  }

  /// Weight rational: numerator in {-2..2}, denominator in {1,2}.
  Rat small_rat() {
    const long num = static_cast<long>(uniform(0, 4)) - 2;
    const long den = static_cast<long>(uniform(1, 2));
    return Rat(num, den);
  }

  /// Distinct indices from [0, pool), ascending; partial Fisher-Yates.
  std::vector<std::size_t> subset(std::size_t pool, std::size_t k) {
    std::vector<std::size_t> idx(pool);
    for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[index(i, pool - 1)]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
  }

  RatVec vec(std::size_t n) {
    RatVec v(n);
    for (auto& x : v) x = small_rat();
    return v;
  }

private:
  std::mt19937_64 eng_;
};

struct NetworkRanges {
  std::size_t n_lo = 1, n_hi = 6;
  std::size_t depth_lo = 0, depth_hi = 3;
  std::size_t d_max = 3;      // layer indegrees drawn from [2, d_max] (layer 1 is n)
  std::size_t r_max = 3;      // layer ranks drawn from [1, r_max]
  std::size_t width_max = 3;  // hidden widths drawn from [1, width_max]
};

/// A valid-by-construction network: each neuron reads a random d-subset of
/// the previous layer and takes between 1 and r arguments with weights from
/// {-2..2}/{1,2}.
inline SparseMaxoutNetwork random_network(Rng& rng, const NetworkRanges& ranges = {}) {
  SparseMaxoutNetwork net;
  const std::size_t n = rng.index(ranges.n_lo, ranges.n_hi);
  const std::size_t depth = rng.index(ranges.depth_lo, ranges.depth_hi);
  net.spec.input_dim = n;
  net.spec.depth = depth;
  std::size_t prev = n;
  for (std::size_t l = 1; l <= depth; ++l) {
    const std::size_t d = l == 1 ? n : rng.index(2, ranges.d_max);
    const std::size_t r = rng.index(1, ranges.r_max);
    net.spec.indegree.push_back(d);
    net.spec.rank.push_back(r);
    const std::size_t width = rng.index(1, ranges.width_max);
    std::vector<MaxoutNeuron> layer(width);
    for (auto& neuron : layer) {
      const std::vector<std::size_t> support = rng.subset(prev, std::min(d, prev));
      const std::size_t nargs = rng.index(1, r);
      for (std::size_t a = 0; a < nargs; ++a) {
        RatVec arg = zero_vec(prev);
        for (std::size_t s : support) arg[s] = rng.small_rat();
        neuron.args.push_back(std::move(arg));
      }
    }
    net.layers.push_back(std::move(layer));
    prev = width;
  }
  net.output = rng.vec(prev);
  return net;
}

/// MAX expression whose first term has exactly `max_rank` arguments (the
/// others at most that many), so the expression's max-rank is exact.
inline MaxExpression random_expression(Rng& rng, std::size_t n, std::size_t max_terms,
                                       std::size_t max_rank) {
  MaxExpression e;
  e.input_dim = n;
  const std::size_t p = rng.index(1, max_terms);
  for (std::size_t t = 0; t < p; ++t) {
    MaxTerm term;
    term.beta = rng.small_rat();
    const std::size_t nargs = t == 0 ? max_rank : rng.index(1, max_rank);
    for (std::size_t a = 0; a < nargs; ++a) term.args.push_back(rng.vec(n));
    e.terms.push_back(std::move(term));
  }
  return e;
}

/// Random polytope from k generator points with small rational coordinates.
inline Polytope random_polytope(Rng& rng, std::size_t n, std::size_t max_points) {
  const std::size_t k = rng.index(1, max_points);
  RatMat pts;
  pts.reserve(k);
  for (std::size_t i = 0; i < k; ++i) pts.push_back(rng.vec(n));
  return canonical_form(pts);
}

}  // namespace vpoly
