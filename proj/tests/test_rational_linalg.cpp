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

#include "vpoly/linalg.hpp"
#include "vpoly/random_gen.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vpoly;

TEST_CASE("rational wire format", "[rational]") {
  CHECK(rat_to_string(Rat(-3, 2)) == "-3/2");
  CHECK(rat_to_string(Rat(7)) == "7");
  CHECK(rat_to_string(Rat(4, 6)) == "2/3");
  CHECK(rat_from_string("-3/2") == Rat(-3, 2));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_from_string("5/10") == Rat(1, 2));  // canonicalized on parse
  CHECK(rat_from_string("+3") == Rat(3));
  CHECK_THROWS_AS(rat_from_string(""), ParseError);
  CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rat_from_string("1/-2"), ParseError);
  CHECK_THROWS_AS(rat_from_string("a/b"), ParseError);
  CHECK_THROWS_AS(rat_from_string("1.5"), ParseError);
}

TEST_CASE("rational arithmetic stays canonical", "[rational]") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rat a(static_cast<long>(rng.uniform(0, 40)) - 20, static_cast<long>(rng.uniform(1, 12)));
    const Rat b(static_cast<long>(rng.uniform(0, 40)) - 20, static_cast<long>(rng.uniform(1, 12)));
    for (const Rat& r : {Rat(a + b), Rat(a * b), Rat(a - b)}) {
      CHECK(boost::multiprecision::gcd(Int(boost::multiprecision::abs(numerator(r))),
                                       Int(denominator(r))) <= 1);
      CHECK(denominator(r) > 0);
      CHECK(rat_from_string(rat_to_string(r)) == r);
    }
  }
}

TEST_CASE("rank on the named cases", "[rational]") {
  const RatVec z2 = zero_vec(2);
  CHECK(rank({unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)}) == 3);
  CHECK(rank({zero_vec(4), zero_vec(4)}) == 0);
  CHECK(rank({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}, {Rat(3), Rat(6)}}) == 1);
  CHECK(rank({}) == 0);
  CHECK(rank({z2}) == 0);
  // fractional entries
  CHECK(rank({{Rat(1, 2), Rat(1, 3)}, {Rat(3, 2), Rat(1)}}) == 2);
}

TEST_CASE("rank is invariant under row operations", "[rational]") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = rng.index(1, 5), cols = rng.index(1, 5);
    RatMat m;
    for (std::size_t i = 0; i < rows; ++i) m.push_back(rng.vec(cols));
    const std::size_t rk = rank(m);
    CHECK(rk <= std::min(rows, cols));
    RatMat scaledm = m;
    for (auto& row : scaledm) row = scaled(row, Rat(3, 7));
    RatMat doubled = m;
    doubled.push_back(m[rng.index(0, rows - 1)]);  // duplicate row
    CHECK(rank(scaledm) <= rk);  // zero scale impossible here? 3/7 != 0, equal rank
    CHECK(rank(scaledm) == rk);
    CHECK(rank(doubled) == rk);
  }
}

TEST_CASE("kernel basis spans the orthogonal complement", "[rational]") {
  // single row e1 in R^3: complement is {e2, e3}
  const RatMat basis = kernel_basis({unit_vec(3, 0)}, 3);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == unit_vec(3, 1));
  CHECK(basis[1] == unit_vec(3, 2));

  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.index(1, 5);
    RatMat m;
    const std::size_t rows = rng.index(0, 4);
    for (std::size_t i = 0; i < rows; ++i) m.push_back(rng.vec(n));
    const RatMat basisr = kernel_basis(m, n);
    CHECK(basisr.size() == n - rank(m));
    for (const RatVec& v : basisr)
      for (const RatVec& row : m) CHECK(dot(row, v) == 0);
    // basis vectors are independent
    CHECK(rank(basisr) == basisr.size());
  }
}

TEST_CASE("primitive_row clears denominators and content", "[rational]") {
  const RatVec r = primitive_row({Rat(4, 6), Rat(-2, 3), Rat(0)});
  CHECK(r == RatVec{Rat(1), Rat(-1), Rat(0)});
  CHECK(primitive_row(zero_vec(3)) == zero_vec(3));
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const RatVec v = rng.vec(4);
    if (is_zero(v)) continue;
    const RatVec p = primitive_row(v);
    CHECK(parallel_nonzero(p, v));
    Int g = 0;
    for (const Rat& x : p) {
      CHECK(denominator(x) == 1);
      g = boost::multiprecision::gcd(g, Int(boost::multiprecision::abs(numerator(x))));
    }
    CHECK(g == 1);
  }
}

TEST_CASE("parallel_nonzero detects proportionality", "[rational]") {
  CHECK(parallel_nonzero({Rat(2), Rat(-4)}, {Rat(-1), Rat(2)}));
  CHECK_FALSE(parallel_nonzero({Rat(1), Rat(0)}, {Rat(0), Rat(1)}));
  CHECK_FALSE(parallel_nonzero(zero_vec(2), {Rat(1), Rat(1)}));
  CHECK_FALSE(parallel_nonzero({Rat(1), Rat(1)}, {Rat(1), Rat(2)}));
}
