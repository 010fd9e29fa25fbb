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

#include "vpoly/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace vpoly {

/// Dense rational vectors and matrices. Vectors compare lexicographically
/// via std::vector's operator<, which gives the canonical point order used
/// throughout the polytope layer.
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

class DimensionMismatch : public std::runtime_error {
public:
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

inline void require_same_dim(const RatVec& a, const RatVec& b, const char* where) {
  if (a.size() != b.size())
    throw DimensionMismatch(std::string(where) + ": dimensions " +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  require_same_dim(a, b, "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
  require_same_dim(a, b, "add");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
  require_same_dim(a, b, "sub");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec scaled(const RatVec& a, const Rat& lambda) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = lambda * a[i];
  return r;
}

inline RatVec negated(const RatVec& a) { return scaled(a, Rat(-1)); }

inline RatVec zero_vec(std::size_t n) { return RatVec(n, Rat(0)); }

inline RatVec unit_vec(std::size_t n, std::size_t i) {
  RatVec r(n, Rat(0));
  r[i] = 1;
  return r;
}

inline bool is_zero(const RatVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

/// True iff a = lambda * b for some nonzero rational lambda.
inline bool parallel_nonzero(const RatVec& a, const RatVec& b) {
  require_same_dim(a, b, "parallel_nonzero");
  if (is_zero(a) || is_zero(b)) return false;
  Rat lambda = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (b[i] != 0) {
      Rat q = a[i] / b[i];
      if (lambda == 0)
        lambda = q;
      else if (q != lambda)
        return false;
    }
  }
  return lambda != 0;
}

/// Clears denominators and divides by the content, so the row becomes a
/// primitive integer vector with the same sign pattern. Zero rows pass
/// through unchanged. Keeps LP and elimination arithmetic small.
inline RatVec primitive_row(const RatVec& row) {
  Int lcm_den = 1;
  for (const Rat& x : row)
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  Int gcd_num = 0;
  for (const Rat& x : row)
    if (x != 0) gcd_num = boost::multiprecision::gcd(gcd_num, Int(numerator(x) * (lcm_den / denominator(x))));
  if (gcd_num == 0) return row;
  RatVec out(row.size());
  const Rat factor = Rat(lcm_den, gcd_num);
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i] * factor;
  return out;
}

/// Exact rank over the rationals via Bareiss fraction-free elimination on
/// the denominator-cleared matrix.
inline std::size_t rank(const RatMat& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) throw DimensionMismatch("rank: matrix is not rectangular");
  // integer copy, row-wise denominator clearing
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Int l = 1;
    for (const Rat& x : m[i])
      if (x != 0) l = boost::multiprecision::lcm(l, denominator(x));
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = numerator(m[i][j]) * (l / denominator(m[i][j]));
  }
  std::size_t rk = 0;
  Int prev = 1;
  for (std::size_t col = 0; col < cols && rk < rows; ++col) {
    std::size_t piv = rk;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rk], a[piv]);
    for (std::size_t i = rk + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        a[i][j] = (a[i][j] * a[rk][col] - a[i][col] * a[rk][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rk][col];
    ++rk;
  }
  return rk;
}

/// Basis of the null space {x : m x = 0}, i.e. the orthogonal complement of
/// the row span. Deterministic: Gauss-Jordan with first-nonzero pivoting,
/// one basis vector per free column in ascending order. Returns n vectors
/// minus rank(m); for an empty row set returns the standard basis.
inline RatMat kernel_basis(RatMat m, std::size_t n) {
  for (const auto& r : m)
    if (r.size() != n) throw DimensionMismatch("kernel_basis: row length mismatch");
  std::size_t rk = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < n && rk < m.size(); ++col) {
    std::size_t piv = rk;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rk], m[piv]);
    const Rat p = m[rk][col];
    for (std::size_t j = 0; j < n; ++j) m[rk][j] /= p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rk || m[i][col] == 0) continue;
      const Rat f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[rk][j];
    }
    pivot_col.push_back(col);
    ++rk;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  RatMat basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RatVec v = zero_vec(n);
    v[free] = 1;
    for (std::size_t i = 0; i < rk; ++i) v[pivot_col[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace vpoly
