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

#include "vpoly/polytope.hpp"
#include "vpoly/random_gen.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vpoly;

namespace {

Polytope segment(std::size_t n, std::size_t axis) {
  return canonical_form({zero_vec(n), unit_vec(n, axis)});
}

Polytope unit_square() {
  return canonical_form({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
}

}  // namespace

TEST_CASE("canonical_form removes redundant generators", "[polytope]") {
  SECTION("midpoint removal") {
    const Polytope p = canonical_form({{Rat(0)}, {Rat(1)}, {Rat(1, 2)}});
    CHECK(p.points() == RatMat{{Rat(0)}, {Rat(1)}});
  }
  SECTION("interior point removal") {
    const Polytope p = canonical_form({{Rat(0), Rat(0)},
                                       {Rat(1), Rat(0)},
                                       {Rat(0), Rat(1)},
                                       {Rat(1), Rat(1)},
                                       {Rat(1, 2), Rat(1, 2)}});
    CHECK(p.size() == 4);
    CHECK(p == unit_square());
  }
  SECTION("empty input is rejected") {
    CHECK_THROWS_AS(canonical_form({}), EmptyGeneratorSet);
  }
  SECTION("random dimension-3 instances match the barycentric oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
      RatMat pts;
      for (int i = 0; i < 10; ++i) pts.push_back(rng.vec(3));
      const Polytope p = canonical_form(pts);
      CHECK(p.points() == oracle::extreme_points(pts));
    }
  }
}

TEST_CASE("canonical_form is idempotent and representation independent", "[polytope]") {
  Rng rng(4096);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = rng.index(1, 4);
    const Polytope p = random_polytope(rng, n, 8);
    // idempotence
    CHECK(canonical_form(p.points()) == p);
    // pad with random convex combinations of the extreme points: same hull
    RatMat padded = p.points();
    for (int extra = 0; extra < 6; ++extra) {
      const std::size_t a = rng.index(0, p.size() - 1), b = rng.index(0, p.size() - 1);
      const Rat lam(static_cast<long>(rng.uniform(0, 4)), 4);
      padded.push_back(add(scaled(p.points()[a], lam), scaled(p.points()[b], 1 - lam)));
    }
    CHECK(canonical_form(padded) == p);
  }
}

TEST_CASE("canonical_form_certified separates each vertex", "[polytope]") {
  Rng rng(999);
  for (int trial = 0; trial < 10; ++trial) {
    RatMat pts;
    for (int i = 0; i < 8; ++i) pts.push_back(rng.vec(3));
    const auto [p, seps] = canonical_form_certified(pts);
    REQUIRE(seps.size() == p.size());
    if (p.size() == 1) continue;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i) CHECK(dot(seps[i], p.points()[i]) > dot(seps[i], p.points()[j]));
  }
}

TEST_CASE("minkowski_sum on the named cases", "[polytope]") {
  SECTION("two segments make the unit square") {
    CHECK(minkowski_sum(segment(2, 0), segment(2, 1)) == unit_square());
  }
  SECTION("singleton summand translates") {
    Rng rng(5);
    const Polytope p = random_polytope(rng, 3, 7);
    const RatVec t = rng.vec(3);
    const Polytope q = minkowski_sum(p, Polytope::singleton(t));
    REQUIRE(q.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(q.points()[i] == add(p.points()[i], t));
  }
  SECTION("three segments make the cube") {
    const Polytope cube =
        minkowski_sum(minkowski_sum(segment(3, 0), segment(3, 1)), segment(3, 2));
    CHECK(cube.size() == 8);
    CHECK(poly_dim(cube) == 3);
  }
  SECTION("dimension mismatch is rejected") {
    CHECK_THROWS_AS(minkowski_sum(segment(2, 0), segment(3, 0)), DimensionMismatch);
  }
  SECTION("random instances match the brute-force oracle") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = rng.index(1, 3);
      const Polytope p = random_polytope(rng, n, 5);
      const Polytope q = random_polytope(rng, n, 5);
      RatMat sums;
      for (const auto& a : p.points())
        for (const auto& b : q.points()) sums.push_back(add(a, b));
      CHECK(minkowski_sum(p, q).points() == oracle::extreme_points(sums));
    }
  }
}

TEST_CASE("convex_union on the named cases", "[polytope]") {
  SECTION("two points make a segment") {
    const Polytope p = convex_union(Polytope::singleton(unit_vec(2, 0)),
                                    Polytope::singleton(unit_vec(2, 1)));
    CHECK(p.points() == RatMat{unit_vec(2, 1), unit_vec(2, 0)});
  }
  SECTION("absorption") {
    Rng rng(6);
    const Polytope p = random_polytope(rng, 3, 7);
    // Q: convex combinations of P's vertices
    RatMat qpts;
    for (int i = 0; i < 4; ++i) {
      const std::size_t a = rng.index(0, p.size() - 1), b = rng.index(0, p.size() - 1);
      qpts.push_back(add(scaled(p.points()[a], Rat(1, 2)), scaled(p.points()[b], Rat(1, 2))));
    }
    CHECK(convex_union(p, canonical_form(qpts)) == p);
  }
  SECTION("the section-5 counterexample Newton polytope at n=4") {
    RatMat square;
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b) square.push_back({Rat(a), Rat(b), Rat(0), Rat(0)});
    const Polytope p = convex_union(convex_union(canonical_form(square),
                                                 Polytope::singleton(unit_vec(4, 2))),
                                    Polytope::singleton(unit_vec(4, 3)));
    CHECK(p.size() == 6);
    RatMat all = square;
    all.push_back(unit_vec(4, 2));
    all.push_back(unit_vec(4, 3));
    CHECK(p.points() == oracle::extreme_points(all));
  }
}

TEST_CASE("scale", "[polytope]") {
  Rng rng(8);
  const Polytope p = random_polytope(rng, 2, 6);
  SECTION("zero collapses to the origin") {
    CHECK(scale(p, Rat(0)) == Polytope::origin(2));
  }
  SECTION("identity") { CHECK(scale(p, Rat(1)) == p); }
  SECTION("three halves on a segment") {
    const Polytope s = scale(segment(2, 0), Rat(3, 2));
    CHECK(s.points() == RatMat{{Rat(0), Rat(0)}, {Rat(3, 2), Rat(0)}});
  }
  SECTION("negative factors are rejected") {
    CHECK_THROWS_AS(scale(p, Rat(-1, 2)), NegativeScaleOnPolytope);
  }
}

TEST_CASE("poly_dim", "[polytope]") {
  CHECK(poly_dim(Polytope::singleton({Rat(5), Rat(-1, 3)})) == 0);
  CHECK(poly_dim(canonical_form({zero_vec(3), unit_vec(3, 0), unit_vec(3, 1)})) == 2);
  SECTION("sum of k independent segments has dimension k") {
    for (std::size_t k = 1; k <= 4; ++k) {
      Polytope p = segment(4, 0);
      for (std::size_t i = 1; i < k; ++i) p = minkowski_sum(p, segment(4, i));
      CHECK(poly_dim(p) == k);
      // generators' rank is the oracle here
      RatMat gens;
      for (std::size_t i = 0; i < k; ++i) gens.push_back(unit_vec(4, i));
      CHECK(rank(gens) == k);
    }
  }
}

TEST_CASE("support_value", "[polytope]") {
  const Polytope tri = canonical_form({zero_vec(3), unit_vec(3, 0), unit_vec(3, 1)});
  CHECK(support_value(tri, {Rat(2), Rat(3), Rat(0)}) == 3);
  const RatVec pt = {Rat(-1), Rat(2), Rat(1, 2)};
  CHECK(support_value(Polytope::singleton(pt), {Rat(2), Rat(1), Rat(4)}) == dot(pt, {Rat(2), Rat(1), Rat(4)}));
  CHECK_THROWS_AS(support_value(tri, zero_vec(2)), DimensionMismatch);

  SECTION("additivity and max law at random directions") {
    Rng rng(313);
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t n = rng.index(1, 3);
      const Polytope p = random_polytope(rng, n, 5);
      const Polytope q = random_polytope(rng, n, 5);
      const Polytope sum = minkowski_sum(p, q);
      const Polytope uni = convex_union(p, q);
      for (int k = 0; k < 100; ++k) {
        const RatVec x = rng.vec(n);
        CHECK(support_value(sum, x) == support_value(p, x) + support_value(q, x));
        const Rat mx = std::max(support_value(p, x), support_value(q, x));
        CHECK(support_value(uni, x) == mx);
      }
    }
  }
}

TEST_CASE("poly_dim is subadditive under Minkowski sums", "[polytope]") {
  Rng rng(414);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = rng.index(1, 4);
    const Polytope p = random_polytope(rng, n, 5);
    const Polytope q = random_polytope(rng, n, 5);
    CHECK(poly_dim(minkowski_sum(p, q)) <= poly_dim(p) + poly_dim(q));
  }
  // equality for independent segments
  const Polytope s = minkowski_sum(segment(3, 0), segment(3, 1));
  CHECK(poly_dim(s) == 2);
}

TEST_CASE("edges on the named polytopes", "[polytope]") {
  CHECK(edges(unit_square()).size() == 4);
  CHECK(edges(canonical_form({unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)})).size() == 3);
  SECTION("cross-polytope has 12 edges") {
    RatMat pts;
    for (std::size_t i = 0; i < 3; ++i) {
      pts.push_back(unit_vec(3, i));
      pts.push_back(negated(unit_vec(3, i)));
    }
    const Polytope cp = canonical_form(pts);
    const EdgeList e = edges(cp);
    CHECK(e.size() == 12);
    CHECK(e == oracle::edges(cp));
  }
  SECTION("a segment has one edge, a singleton none") {
    CHECK(edges(segment(3, 1)).size() == 1);
    CHECK(edges(Polytope::origin(2)).empty());
  }
  SECTION("random instances match the midpoint oracle") {
    Rng rng(515);
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t n = rng.index(2, 4);
      const Polytope p = random_polytope(rng, n, 8);
      CHECK(edges(p) == oracle::edges(p));
    }
  }
}
