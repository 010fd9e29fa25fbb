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

#include "vpoly/lp.hpp"
#include "vpoly/random_gen.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vpoly;

namespace {

/// Exact satisfaction replay: every constraint holds at the point, bounds
/// included, and the objective value matches.
void check_point_satisfies(const LinearProgram& lp, const LpResult& r) {
  REQUIRE(r.status == LpStatus::Optimal);
  for (std::size_t i = 0; i < lp.A.size(); ++i) {
    const Rat lhs = dot(lp.A[i], r.point);
    switch (lp.rel[i]) {
      case Rel::Le: CHECK(lhs <= lp.rhs[i]); break;
      case Rel::Eq: CHECK(lhs == lp.rhs[i]); break;
      case Rel::Ge: CHECK(lhs >= lp.rhs[i]); break;
    }
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (!lp.lower.empty() && lp.lower[j]) CHECK(r.point[j] >= *lp.lower[j]);
    if (!lp.upper.empty() && lp.upper[j]) CHECK(r.point[j] <= *lp.upper[j]);
  }
  CHECK(dot(lp.objective, r.point) == r.value);
}

void check_farkas(const LinearProgram& lp, const LpResult& r) {
  REQUIRE(r.status == LpStatus::Infeasible);
  REQUIRE(r.farkas.size() == lp.A.size());
  RatVec comb = zero_vec(lp.num_vars());
  Rat rhs = 0;
  for (std::size_t i = 0; i < lp.A.size(); ++i) {
    if (lp.rel[i] == Rel::Ge) CHECK(r.farkas[i] >= 0);
    if (lp.rel[i] == Rel::Le) CHECK(r.farkas[i] <= 0);
    comb = add(comb, scaled(lp.A[i], r.farkas[i]));
    rhs += r.farkas[i] * lp.rhs[i];
  }
  // all variables in these tests are free, so the combination must vanish
  CHECK(is_zero(comb));
  CHECK(rhs > 0);
}

}  // namespace

TEST_CASE("lp_optimize on the named systems", "[lp]") {
  SECTION("forced bound") {
    LinearProgram lp;
    lp.objective = {Rat(1)};
    lp.lower = {Rat(0)};
    lp.upper = {Rat(1)};
    const LpResult r = lp_optimize(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 1);
    CHECK(r.point == RatVec{Rat(1)});
  }
  SECTION("contradictory bounds") {
    LinearProgram lp;
    lp.objective = {Rat(1)};
    lp.add_row({Rat(1)}, Rel::Le, Rat(-1));
    lp.add_row({Rat(1)}, Rel::Ge, Rat(0));
    const LpResult r = lp_optimize(lp);
    REQUIRE(r.status == LpStatus::Infeasible);
    check_farkas(lp, r);
  }
  SECTION("missing upper bound") {
    LinearProgram lp;
    lp.objective = {Rat(1)};
    lp.add_row({Rat(1)}, Rel::Ge, Rat(0));
    CHECK(lp_optimize(lp).status == LpStatus::Unbounded);
  }
}

TEST_CASE("lp_optimize against hand-solved systems", "[lp]") {
  SECTION("two-constraint maximum") {
    // max x+y st x+2y<=4, 3x+y<=6, x,y>=0: optimum 14/5 at (8/5, 6/5)
    LinearProgram lp;
    lp.objective = {Rat(1), Rat(1)};
    lp.add_row({Rat(1), Rat(2)}, Rel::Le, Rat(4));
    lp.add_row({Rat(3), Rat(1)}, Rel::Le, Rat(6));
    lp.lower = {Rat(0), Rat(0)};
    lp.upper = {std::nullopt, std::nullopt};
    const LpResult r = lp_optimize(lp);
    check_point_satisfies(lp, r);
    CHECK(r.value == Rat(14, 5));
    CHECK(r.point == RatVec{Rat(8, 5), Rat(6, 5)});
  }
  SECTION("degenerate equality system") {
    // x + y = 3, x - y = 1 has the unique point (2, 1)
    LinearProgram lp;
    lp.objective = {Rat(0), Rat(0)};
    lp.add_row({Rat(1), Rat(1)}, Rel::Eq, Rat(3));
    lp.add_row({Rat(1), Rat(-1)}, Rel::Eq, Rat(1));
    const LpResult r = lp_optimize(lp);
    check_point_satisfies(lp, r);
    CHECK(r.point == RatVec{Rat(2), Rat(1)});
  }
  SECTION("redundant rows survive phase one") {
    LinearProgram lp;
    lp.objective = {Rat(-1), Rat(2)};
    lp.add_row({Rat(1), Rat(1)}, Rel::Eq, Rat(2));
    lp.add_row({Rat(2), Rat(2)}, Rel::Eq, Rat(4));  // duplicate
    lp.add_row({Rat(0), Rat(1)}, Rel::Le, Rat(5));
    const LpResult r = lp_optimize(lp);
    check_point_satisfies(lp, r);
    CHECK(r.value == Rat(13));  // x = -3, y = 5
  }
}

TEST_CASE("lp_optimize is deterministic and exact on random instances", "[lp]") {
  Rng rng(101);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = rng.index(1, 4);
    const std::size_t m = rng.index(1, 6);
    LinearProgram lp;
    lp.objective = rng.vec(n);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t rel = rng.index(0, 2);
      lp.add_row(rng.vec(n), rel == 0 ? Rel::Le : rel == 1 ? Rel::Eq : Rel::Ge, rng.small_rat());
    }
    const LpResult r1 = lp_optimize(lp);
    const LpResult r2 = lp_optimize(lp);
    CHECK(r1.status == r2.status);
    switch (r1.status) {
      case LpStatus::Optimal:
        ++optimal;
        check_point_satisfies(lp, r1);
        CHECK(r1.point == r2.point);
        CHECK(r1.value == r2.value);
        break;
      case LpStatus::Infeasible:
        ++infeasible;
        check_farkas(lp, r1);
        CHECK(r1.farkas == r2.farkas);
        break;
      case LpStatus::Unbounded:
        ++unbounded;
        break;
    }
  }
  // the generator must exercise all three statuses
  CHECK(optimal > 0);
  CHECK(infeasible > 0);
  CHECK(unbounded > 0);
}

TEST_CASE("cone_strict_feasible on the named cones", "[lp]") {
  SECTION("first orthant") {
    const auto w = cone_strict_feasible({unit_vec(2, 0), unit_vec(2, 1)});
    REQUIRE(w.has_value());
    CHECK((*w)[0] > 0);
    CHECK((*w)[1] > 0);
  }
  SECTION("forced equality has empty interior") {
    CHECK_FALSE(cone_strict_feasible({{Rat(1)}, {Rat(-1)}}).has_value());
  }
  SECTION("normal cones of two polytopes intersect in an open cell") {
    // vertex e1 of conv{e1,e2} against vertex 0 of conv{0, e1+e2}
    const RatMat rows = {{Rat(1), Rat(-1)}, {Rat(-1), Rat(-1)}};
    const auto w = cone_strict_feasible(rows);
    REQUIRE(w.has_value());
    for (const auto& row : rows) CHECK(dot(row, *w) > 0);
    // matches the grid search on the same cone
    CHECK(oracle::grid_strict_feasible(rows, {Rat(-2), Rat(-1), Rat(0), Rat(1), Rat(2)}, 2)
              .has_value());
  }
}

TEST_CASE("strict feasibility agrees with grid search on small cones", "[lp]") {
  // Cones assembled from differences of small lattice points; the +-2 grid
  // with half steps decides all of them.
  const std::vector<Rat> grid = {Rat(-2), Rat(-3, 2), Rat(-1), Rat(-1, 2), Rat(0),
                                 Rat(1, 2), Rat(1),  Rat(3, 2), Rat(2)};
  Rng rng(55);
  int feasible_seen = 0, blocked_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.index(1, 3);
    const std::size_t m = rng.index(1, 4);
    RatMat rows;
    for (std::size_t i = 0; i < m; ++i) {
      RatVec r(n);
      for (auto& x : r) x = Rat(static_cast<long>(rng.uniform(0, 2)) - 1);  // entries in {-1,0,1}
      rows.push_back(std::move(r));
    }
    const auto lp_ans = cone_strict_feasible(rows);
    const auto grid_ans = oracle::grid_strict_feasible(rows, grid, n);
    if (lp_ans) {
      ++feasible_seen;
      for (const auto& row : rows) CHECK(dot(row, *lp_ans) > 0);
      // witnesses certify themselves; for these integer cones the grid finds one too
      CHECK(grid_ans.has_value());
    } else {
      ++blocked_seen;
      CHECK_FALSE(grid_ans.has_value());
    }
  }
  CHECK(feasible_seen > 0);
  CHECK(blocked_seen > 0);
}

TEST_CASE("strict cone blockers replay by arithmetic", "[lp]") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = rng.index(1, 3);
    ConeSystem cone;
    cone.n = n;
    const std::size_t ns = rng.index(1, 3), nw = rng.index(0, 2), ne = rng.index(0, 1);
    for (std::size_t i = 0; i < ns; ++i) cone.strict.push_back(rng.vec(n));
    for (std::size_t i = 0; i < nw; ++i) cone.weak.push_back(rng.vec(n));
    for (std::size_t i = 0; i < ne; ++i) cone.eq.push_back(rng.vec(n));
    const StrictConeResult r = strict_cone_feasible(cone, /*want_blocker=*/true);
    if (r.feasible) {
      for (const auto& row : cone.strict) CHECK(dot(row, r.witness) > 0);
      for (const auto& row : cone.weak) CHECK(dot(row, r.witness) >= 0);
      for (const auto& row : cone.eq) CHECK(dot(row, r.witness) == 0);
    } else {
      REQUIRE(r.has_blocker);
      Rat mass = 0;
      RatVec comb = zero_vec(n);
      for (std::size_t i = 0; i < cone.strict.size(); ++i) {
        CHECK(r.blocker_strict[i] >= 0);
        mass += r.blocker_strict[i];
        comb = add(comb, scaled(cone.strict[i], r.blocker_strict[i]));
      }
      for (std::size_t i = 0; i < cone.weak.size(); ++i) {
        CHECK(r.blocker_weak[i] >= 0);
        comb = add(comb, scaled(cone.weak[i], r.blocker_weak[i]));
      }
      for (std::size_t i = 0; i < cone.eq.size(); ++i)
        comb = add(comb, scaled(cone.eq[i], r.blocker_eq[i]));
      CHECK(mass == 1);
      CHECK(is_zero(comb));
    }
  }
}
