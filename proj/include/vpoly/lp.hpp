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

#include "vpoly/linalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vpoly {

enum class Rel { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize objective . x  subject to  A x (rel) rhs  and optional per-variable
/// bounds. Variables are free unless a bound is given.
struct LinearProgram {
  RatVec objective;
  RatMat A;
  RatVec rhs;
  std::vector<Rel> rel;
  std::vector<std::optional<Rat>> lower;  // empty or size n
  std::vector<std::optional<Rat>> upper;

  std::size_t num_vars() const { return objective.size(); }
  void add_row(RatVec coeffs, Rel r, Rat b) {
    A.push_back(std::move(coeffs));
    rel.push_back(r);
    rhs.push_back(std::move(b));
  }
};

/// For Optimal: exact value and a point satisfying every constraint exactly.
/// For Infeasible: `farkas` holds one multiplier per constraint row with
///   y_i >= 0 on Ge rows, y_i <= 0 on Le rows, free on Eq rows, such that
///   sum_i y_i A_i vanishes on every free variable (<= 0 on columns with a
///   lower bound, >= 0 with an upper bound) and sum_i y_i rhs_i > 0.
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec point;
  RatVec farkas;
};

namespace detail {

// Dense simplex tableau over the rationals. Bland's anti-cycling rule:
// entering column = lowest index with negative reduced cost (minimization),
// leaving row = lowest basic column index among the minimum ratios. Both
// phases therefore terminate and re-running is bit-identical.
struct Tableau {
  std::size_t ncols = 0;           // excludes the rhs column
  std::vector<RatVec> rows;        // each of size ncols + 1, rhs last
  RatVec red;                      // reduced costs, size ncols
  std::vector<std::size_t> basis;  // basic column per row

  void pivot(std::size_t pr, std::size_t pc) {
    RatVec& prow = rows[pr];
    const Rat pv = prow[pc];
    if (pv != 1)
      for (auto& x : prow)
        if (x != 0) x /= pv;
    prow[pc] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr) continue;
      const Rat f = rows[i][pc];
      if (f == 0) continue;
      RatVec& row = rows[i];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (prow[j] != 0) row[j] -= f * prow[j];
      row[pc] = 0;
    }
    const Rat f = red[pc];
    if (f != 0) {
      for (std::size_t j = 0; j < ncols; ++j)
        if (prow[j] != 0) red[j] -= f * prow[j];
      red[pc] = 0;
    }
    basis[pr] = pc;
  }

  /// red[j] = cost[j] - sum_i cost[basis[i]] * rows[i][j]
  void init_reduced_costs(const RatVec& cost) {
    red = cost;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rat cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        if (rows[i][j] != 0) red[j] -= cb * rows[i][j];
    }
  }

  Rat objective_value(const RatVec& cost) const {
    Rat v = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (cost[basis[i]] != 0) v += cost[basis[i]] * rows[i][ncols];
    return v;
  }

  /// Runs simplex on the current reduced costs, entering only columns
  /// < live_cols. Returns false on unboundedness.
  bool solve(std::size_t live_cols) {
    for (;;) {
      std::size_t pc = live_cols;
      for (std::size_t j = 0; j < live_cols; ++j)
        if (red[j] < 0) {
          pc = j;
          break;
        }
      if (pc == live_cols) return true;  // optimal
      std::size_t pr = rows.size();
      Rat best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][pc] <= 0) continue;
        Rat ratio = rows[i][ncols] / rows[i][pc];
        if (pr == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[pr]))
          pr = i, best = ratio;
      }
      if (pr == rows.size()) return false;  // unbounded
      pivot(pr, pc);
    }
  }
};

}  // namespace detail

inline LpResult lp_optimize(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.A.size();
  if (lp.rhs.size() != m || lp.rel.size() != m)
    throw DimensionMismatch("lp_optimize: row count mismatch");
  for (const auto& row : lp.A)
    if (row.size() != n) throw DimensionMismatch("lp_optimize: row length mismatch");
  if (!lp.lower.empty() && lp.lower.size() != n)
    throw DimensionMismatch("lp_optimize: lower bound count mismatch");
  if (!lp.upper.empty() && lp.upper.size() != n)
    throw DimensionMismatch("lp_optimize: upper bound count mismatch");

  const auto lb = [&](std::size_t j) -> const std::optional<Rat>& {
    static const std::optional<Rat> none;
    return lp.lower.empty() ? none : lp.lower[j];
  };
  const auto ub = [&](std::size_t j) -> const std::optional<Rat>& {
    static const std::optional<Rat> none;
    return lp.upper.empty() ? none : lp.upper[j];
  };

  // Working rows: the original rows plus one Le row per doubly-bounded
  // variable (the upper bound; the lower is absorbed by substitution).
  struct WorkRow {
    RatVec a;
    Rel rel;
    Rat b;
    long orig;  // index into lp.A, or -1 for a generated bound row
  };
  std::vector<WorkRow> work;
  work.reserve(m + n);
  for (std::size_t i = 0; i < m; ++i)
    work.push_back({lp.A[i], lp.rel[i], lp.rhs[i], static_cast<long>(i)});
  for (std::size_t j = 0; j < n; ++j)
    if (lb(j) && ub(j)) {
      RatVec e = zero_vec(n);
      e[j] = 1;
      work.push_back({std::move(e), Rel::Le, *ub(j), -1});
    }

  // Column plan. Free variables split into a positive and a negative part;
  // a single lower (upper) bound becomes a shifted (flipped) nonnegative
  // column.
  enum class ColKind { Pos, Neg, LowerShift, UpperFlip };
  struct Col {
    ColKind kind;
    std::size_t var;
  };
  std::vector<Col> cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (lb(j)) {
      cols.push_back({ColKind::LowerShift, j});
    } else if (ub(j)) {
      cols.push_back({ColKind::UpperFlip, j});
    } else {
      cols.push_back({ColKind::Pos, j});
      cols.push_back({ColKind::Neg, j});
    }
  }
  const std::size_t nstruct = cols.size();

  const auto col_coeff = [&](const RatVec& a, const Col& c) -> Rat {
    switch (c.kind) {
      case ColKind::Pos:
      case ColKind::LowerShift:
        return a[c.var];
      case ColKind::Neg:
      case ColKind::UpperFlip:
        return -a[c.var];
    }
    return Rat(0);
  };

  // Adjust rhs for the substitutions x_j = l_j + x'_j and x_j = u_j - x'_j.
  for (auto& wr : work) {
    for (std::size_t j = 0; j < n; ++j) {
      if (wr.a[j] == 0) continue;
      if (lb(j))
        wr.b -= wr.a[j] * *lb(j);
      else if (ub(j))
        wr.b -= wr.a[j] * *ub(j);
    }
  }

  const std::size_t M = work.size();
  // Equality form. Le rows gain a slack (+1), Ge rows a surplus (-1); rows
  // are then sign-normalized to rhs >= 0. A row whose slack coefficient ends
  // up +1 starts basic; every other row receives an artificial.
  std::size_t nslack = 0;
  for (const auto& wr : work)
    if (wr.rel != Rel::Eq) ++nslack;

  std::vector<int> flip(M, 1);
  std::vector<long> slack_col(M, -1);
  std::vector<long> art_col(M, -1);
  std::size_t next_slack = nstruct;
  std::size_t nart = 0;
  for (std::size_t i = 0; i < M; ++i) {
    if (work[i].b < 0) flip[i] = -1;
    if (work[i].rel != Rel::Eq) slack_col[i] = static_cast<long>(next_slack++);
    const int tau = work[i].rel == Rel::Le ? 1 : (work[i].rel == Rel::Ge ? -1 : 0);
    if (tau * flip[i] != 1) ++nart;
  }
  const std::size_t art_begin = nstruct + nslack;
  const std::size_t ncols = art_begin + nart;

  detail::Tableau tab;
  tab.ncols = ncols;
  tab.rows.assign(M, RatVec(ncols + 1, Rat(0)));
  tab.basis.assign(M, 0);
  {
    std::size_t next_art = art_begin;
    for (std::size_t i = 0; i < M; ++i) {
      RatVec& row = tab.rows[i];
      for (std::size_t j = 0; j < nstruct; ++j) {
        Rat v = col_coeff(work[i].a, cols[j]);
        if (v != 0) row[j] = flip[i] * v;
      }
      const int tau = work[i].rel == Rel::Le ? 1 : (work[i].rel == Rel::Ge ? -1 : 0);
      if (slack_col[i] >= 0) row[static_cast<std::size_t>(slack_col[i])] = flip[i] * tau;
      row[ncols] = flip[i] * work[i].b;
      if (tau * flip[i] == 1) {
        tab.basis[i] = static_cast<std::size_t>(slack_col[i]);
      } else {
        art_col[i] = static_cast<long>(next_art);
        row[next_art] = 1;
        tab.basis[i] = next_art;
        ++next_art;
      }
    }
  }

  LpResult res;
  if (nart > 0) {
    RatVec cost1(ncols, Rat(0));
    for (std::size_t j = art_begin; j < ncols; ++j) cost1[j] = 1;
    tab.init_reduced_costs(cost1);
    tab.solve(ncols);  // bounded below by 0, can't be unbounded
    const Rat w = tab.objective_value(cost1);
    if (w > 0) {
      // Phase-1 duals: y_i recovered from the reduced cost of the identity
      // column of row i, then mapped back through the sign normalization.
      res.status = LpStatus::Infeasible;
      res.farkas.assign(m, Rat(0));
      for (std::size_t i = 0; i < M; ++i) {
        Rat y;
        if (art_col[i] >= 0) {
          y = Rat(1) - tab.red[static_cast<std::size_t>(art_col[i])];
        } else {
          // reduced cost of the slack column = 0 - y_bar * (flip*tau)
          const int tau = work[i].rel == Rel::Le ? 1 : -1;
          y = -tab.red[static_cast<std::size_t>(slack_col[i])] / (flip[i] * tau);
        }
        const Rat y_orig = y * flip[i];
        if (work[i].orig >= 0) res.farkas[static_cast<std::size_t>(work[i].orig)] = y_orig;
      }
      return res;
    }
    // Drive residual artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.rows.size();) {
      if (tab.basis[i] < art_begin) {
        ++i;
        continue;
      }
      std::size_t pc = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j)
        if (tab.rows[i][j] != 0) {
          pc = j;
          break;
        }
      if (pc < art_begin) {
        tab.pivot(i, pc);
        ++i;
      } else {
        tab.rows.erase(tab.rows.begin() + static_cast<long>(i));
        tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
      }
    }
  }

  // Phase 2: minimize the negated objective over the structural columns.
  RatVec cost2(ncols, Rat(0));
  for (std::size_t j = 0; j < nstruct; ++j) {
    const Rat c = lp.objective[cols[j].var];
    if (c == 0) continue;
    switch (cols[j].kind) {
      case ColKind::Pos:
      case ColKind::LowerShift:
        cost2[j] = -c;
        break;
      case ColKind::Neg:
      case ColKind::UpperFlip:
        cost2[j] = c;
        break;
    }
  }
  tab.init_reduced_costs(cost2);
  if (!tab.solve(art_begin)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  RatVec colval(ncols, Rat(0));
  for (std::size_t i = 0; i < tab.rows.size(); ++i)
    colval[tab.basis[i]] = tab.rows[i][tab.ncols];
  RatVec x(n, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (lb(j))
      x[j] = *lb(j);
    else if (ub(j))
      x[j] = *ub(j);
  }
  for (std::size_t j = 0; j < nstruct; ++j) {
    if (colval[j] == 0) continue;
    switch (cols[j].kind) {
      case ColKind::Pos:
      case ColKind::LowerShift:
        x[cols[j].var] += colval[j];
        break;
      case ColKind::Neg:
      case ColKind::UpperFlip:
        x[cols[j].var] -= colval[j];
        break;
    }
  }
  res.status = LpStatus::Optimal;
  res.point = std::move(x);
  res.value = dot(lp.objective, res.point);
  return res;
}

/// Homogeneous cone system {x : eq.x = 0, weak.x >= 0, strict.x > 0 jointly}.
struct ConeSystem {
  std::size_t n = 0;
  RatMat strict, weak, eq;
};

/// Outcome of the relative-interior test. When feasible, `witness` attains
/// strict.x >= margin > 0 with weak.x >= 0 and eq.x = 0 exactly. When not,
/// and a blocker was requested, (blocker_strict, blocker_weak, blocker_eq)
/// is a dual vector with nonnegative strict/weak parts, total strict mass 1,
/// whose combination of the rows vanishes: it proves that every point of the
/// cone has strict.x = 0 somewhere, i.e. there is no relatively interior
/// point. Both objects replay by plain arithmetic.
struct StrictConeResult {
  bool feasible = false;
  RatVec witness;
  Rat margin;
  bool has_blocker = false;
  RatVec blocker_strict, blocker_weak, blocker_eq;
};

/// Decides strict feasibility via the auxiliary LP max eps s.t.
/// strict.x >= eps*1, weak.x >= 0, eq.x = 0, eps <= 1. The system is
/// homogeneous, so the optimum is exactly 0 or 1. Every inequality is kept
/// in slack-basic form, so the LP solves in a single phase.
inline StrictConeResult strict_cone_feasible(const ConeSystem& cone, bool want_blocker = false) {
  const std::size_t n = cone.n;
  StrictConeResult out;
  if (cone.strict.empty()) {
    // Nothing to hold strictly; the homogeneous system is satisfied by 0.
    out.feasible = true;
    out.witness = zero_vec(n);
    out.margin = 1;
    return out;
  }
  for (const auto& r : cone.strict)
    if (is_zero(r)) {
      out.feasible = false;
      if (want_blocker) {
        // 1 * (zero row) = 0 is already a valid blocker.
        out.has_blocker = true;
        out.blocker_strict = zero_vec(cone.strict.size());
        for (std::size_t i = 0; i < cone.strict.size(); ++i)
          if (is_zero(cone.strict[i])) {
            out.blocker_strict[i] = 1;
            break;
          }
        out.blocker_weak = zero_vec(cone.weak.size());
        out.blocker_eq = zero_vec(cone.eq.size());
      }
      return out;
    }

  LinearProgram lp;
  lp.objective = zero_vec(n + 1);
  lp.objective[n] = 1;  // maximize eps
  for (const auto& r : cone.strict) {
    RatVec row = primitive_row(r);
    row.push_back(Rat(-1));
    lp.add_row(std::move(row), Rel::Ge, Rat(0));
  }
  for (const auto& r : cone.weak) {
    RatVec row = primitive_row(r);
    row.push_back(Rat(0));
    lp.add_row(std::move(row), Rel::Ge, Rat(0));
  }
  for (const auto& r : cone.eq) {
    RatVec row = primitive_row(r);
    row.push_back(Rat(0));
    RatVec neg = negated(row);
    lp.add_row(std::move(row), Rel::Ge, Rat(0));
    lp.add_row(std::move(neg), Rel::Ge, Rat(0));
  }
  {
    RatVec row = zero_vec(n + 1);
    row[n] = 1;
    lp.add_row(std::move(row), Rel::Le, Rat(1));
  }
  const LpResult r = lp_optimize(lp);
  if (r.status != LpStatus::Optimal)
    throw std::logic_error("strict_cone_feasible: auxiliary LP must be optimal");
  if (r.value > 0) {
    out.feasible = true;
    out.witness.assign(r.point.begin(), r.point.begin() + static_cast<long>(n));
    out.margin = r.value;
    return out;
  }
  out.feasible = false;
  if (want_blocker) {
    // Dual feasibility system: strict^T p + weak^T q + eq^T z = 0,
    // sum p = 1, p >= 0, q >= 0, z free.
    const std::size_t ns = cone.strict.size(), nw = cone.weak.size(), ne = cone.eq.size();
    LinearProgram dual;
    dual.objective = zero_vec(ns + nw + ne);
    dual.lower.assign(ns + nw + ne, std::nullopt);
    for (std::size_t i = 0; i < ns + nw; ++i) dual.lower[i] = Rat(0);
    for (std::size_t j = 0; j < n; ++j) {
      RatVec row(ns + nw + ne);
      for (std::size_t i = 0; i < ns; ++i) row[i] = cone.strict[i][j];
      for (std::size_t i = 0; i < nw; ++i) row[ns + i] = cone.weak[i][j];
      for (std::size_t i = 0; i < ne; ++i) row[ns + nw + i] = cone.eq[i][j];
      dual.add_row(std::move(row), Rel::Eq, Rat(0));
    }
    {
      RatVec row = zero_vec(ns + nw + ne);
      for (std::size_t i = 0; i < ns; ++i) row[i] = 1;
      dual.add_row(std::move(row), Rel::Eq, Rat(1));
    }
    const LpResult d = lp_optimize(dual);
    if (d.status != LpStatus::Optimal)
      throw std::logic_error("strict_cone_feasible: blocker system must be feasible");
    out.has_blocker = true;
    out.blocker_strict.assign(d.point.begin(), d.point.begin() + static_cast<long>(ns));
    out.blocker_weak.assign(d.point.begin() + static_cast<long>(ns),
                            d.point.begin() + static_cast<long>(ns + nw));
    out.blocker_eq.assign(d.point.begin() + static_cast<long>(ns + nw), d.point.end());
  }
  return out;
}

/// Witness x with A x >= eps 1 for some eps > 0, iff the cone {x : A x >= 0}
/// has nonempty interior.
inline std::optional<RatVec> cone_strict_feasible(const RatMat& A) {
  if (A.empty()) return zero_vec(0);
  ConeSystem cone;
  cone.n = A[0].size();
  cone.strict = A;
  const StrictConeResult r = strict_cone_feasible(cone);
  if (!r.feasible) return std::nullopt;
  return r.witness;
}

}  // namespace vpoly
