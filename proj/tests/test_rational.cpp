// Copyright 2026 the bwrsolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "bwr/exactlin.hpp"
#include "bwr/rational.hpp"

using namespace bwr;

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("to_string round-trips through parse_rational") {
  for (const char* s : {"0", "5", "-5", "1/3", "-22/7"}) {
    CHECK(to_string(parse_rational(s)) == s);
  }
}

TEST_CASE("pow_rat handles negative exponents") {
  CHECK(pow_rat(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow_rat(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow_rat(Rational(5), 0) == 1);
  CHECK_THROWS_AS(pow_rat(Rational(0), -1), std::domain_error);
}

TEST_CASE("floor and ceil of rationals") {
  CHECK(floor_rat(Rational(7, 2)) == 3);
  CHECK(ceil_rat(Rational(7, 2)) == 4);
  CHECK(floor_rat(Rational(-7, 2)) == -4);
  CHECK(ceil_rat(Rational(-7, 2)) == -3);
  CHECK(floor_rat(Rational(6)) == 6);
  CHECK(ceil_rat(Rational(6)) == 6);
}

TEST_CASE("integer square root helpers") {
  CHECK(isqrt(Integer(32)) == 5);
  CHECK(isqrt(Integer(36)) == 6);
  CHECK(is_perfect_square(Integer(49)));
  CHECK_FALSE(is_perfect_square(Integer(50)));
  CHECK(pow_int(Integer(2), 10) == 1024);
  CHECK(lcm(Integer(4), Integer(6)) == 12);
}

TEST_CASE("solve_linear solves a 3x3 rational system exactly") {
  // x + y + z = 1; 2x - y = 0; y - z = 1/2 has the unique solution
  // x = 3/10, y = 3/5, z = 1/10.
  RatMatrix a = {{1, 1, 1}, {2, -1, 0}, {0, 1, -1}};
  RatMatrix b = {{Rational(1)}, {Rational(0)}, {Rational(1, 2)}};
  RatMatrix x = solve_linear(a, b);
  CHECK(x[0][0] == Rational(3, 10));
  CHECK(x[1][0] == Rational(3, 5));
  CHECK(x[2][0] == Rational(1, 10));
}

TEST_CASE("solve_linear handles multiple right-hand sides and pivoting") {
  RatMatrix a = {{0, 1}, {1, 0}};
  RatMatrix b = {{Rational(2), Rational(1, 3)}, {Rational(-1), Rational(4)}};
  RatMatrix x = solve_linear(a, b);
  CHECK(x[0][0] == -1);
  CHECK(x[0][1] == 4);
  CHECK(x[1][0] == 2);
  CHECK(x[1][1] == Rational(1, 3));
}

TEST_CASE("solve_linear rejects singular matrices") {
  RatMatrix a = {{1, 2}, {2, 4}};
  RatMatrix b = {{Rational(1)}, {Rational(2)}};
  CHECK_THROWS_AS(solve_linear(a, b), std::domain_error);
}
