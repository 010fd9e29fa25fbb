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

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpoly {

/// Exact scalars. All arithmetic in this library is over the rationals;
/// there is no floating point anywhere. GMP keeps values canonical
/// (gcd-reduced, positive denominator) after every operation.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Serializes as "p/q", with "/q" omitted when q == 1 (e.g. "-3/2", "7").
inline std::string rat_to_string(const Rat& r) { return r.str(); }

/// Parses the "p/q" wire format. Accepts an optional sign on p, requires
/// q > 0, and reduces to canonical form.
inline Rat rat_from_string(std::string_view s) {
  const auto fail = [&](const char* why) {
    throw ParseError("invalid rational \"" + std::string(s) + "\": " + why);
  };
  if (s.empty()) fail("empty string");
  const auto slash = s.find('/');
  const std::string_view num_sv = s.substr(0, slash);
  if (num_sv.empty() || num_sv == "-" || num_sv == "+") fail("missing numerator digits");
  std::size_t i = (num_sv[0] == '-' || num_sv[0] == '+') ? 1 : 0;
  for (; i < num_sv.size(); ++i)
    if (num_sv[i] < '0' || num_sv[i] > '9') fail("numerator is not an integer");
  Int num{std::string(num_sv)};
  if (slash == std::string_view::npos) return Rat(num);
  const std::string_view den_sv = s.substr(slash + 1);
  if (den_sv.empty()) fail("missing denominator digits");
  for (char c : den_sv)
    if (c < '0' || c > '9') fail("denominator is not a positive integer");
  Int den{std::string(den_sv)};
  if (den == 0) fail("zero denominator");
  return Rat(num, den);  // the two-argument constructor canonicalizes
}

inline int sign(const Rat& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace vpoly
