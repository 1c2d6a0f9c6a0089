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

#include "bwr/game_io.hpp"
#include "bwr/generate.hpp"
#include "bwr/oracle.hpp"

using namespace bwr;

TEST_CASE("generation is deterministic in the seed") {
  GenerateOptions opt;
  opt.n = 5;
  opt.k = 2;
  opt.max_reward = 3;
  opt.prob_denominator = 2;
  opt.max_out_degree = 3;
  opt.seed = 42;
  std::string a = game_to_json(generate_game(opt)).dump();
  std::string b = game_to_json(generate_game(opt)).dump();
  CHECK(a == b);
  opt.seed = 43;
  CHECK(game_to_json(generate_game(opt)).dump() != a);
}

TEST_CASE("generated games respect the requested shape") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenerateOptions opt;
    opt.n = 6;
    opt.k = 3;
    opt.max_reward = 4;
    opt.prob_denominator = 3;
    opt.min_out_degree = 1;
    opt.max_out_degree = 3;
    opt.seed = seed;
    BwrGame g = generate_game(opt);
    REQUIRE(g.size() == 6);
    CHECK(g.random_count() == 3);
    for (int v = 0; v < g.size(); ++v) {
      int d = g.out_degree(v);
      CHECK(d >= 1);
      CHECK(d <= 3);
      Rational psum(0);
      std::set<int> seen;
      for (int ai : g.out(v)) {
        const Arc& a = g.arc(ai);
        CHECK(a.reward >= 0);
        CHECK(a.reward <= 4);
        CHECK(denominator(a.reward) == 1);
        CHECK(seen.insert(a.to).second);  // simple neighbourhoods
        if (g.owner(v) == Owner::Random) {
          CHECK(a.prob > 0);
          CHECK(denominator(Rational(a.prob * 3)) == 1);  // multiple of 1/D
          psum += a.prob;
        }
      }
      if (g.owner(v) == Owner::Random) CHECK(psum == 1);
    }
  }
}

TEST_CASE("a forced single-vertex shape is a self-loop") {
  GenerateOptions opt;
  opt.n = 1;
  opt.k = 0;
  opt.max_reward = 5;
  opt.prob_denominator = 1;
  opt.max_out_degree = 1;
  opt.seed = 7;
  BwrGame g = generate_game(opt);
  REQUIRE(g.size() == 1);
  REQUIRE(g.out_degree(0) == 1);
  CHECK(g.arc(g.out(0)[0]).to == 0);
}

TEST_CASE("infeasible parameter combinations are rejected") {
  GenerateOptions opt;
  opt.n = 3;
  opt.k = 1;
  opt.prob_denominator = 1;
  opt.min_out_degree = 2;
  opt.max_out_degree = 2;
  CHECK_THROWS_WITH(generate_game(opt), Catch::Matchers::ContainsSubstring("D too small"));
  opt.k = 0;
  opt.min_out_degree = 4;
  opt.max_out_degree = 4;
  CHECK_THROWS_WITH(generate_game(opt),
                    Catch::Matchers::ContainsSubstring("exceeds the number of positions"));
  opt.min_out_degree = 0;
  CHECK_THROWS_AS(generate_game(opt), GameError);
}

TEST_CASE("generated games are solvable by the enumeration oracle") {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    GenerateOptions opt;
    opt.n = 4;
    opt.k = 1;
    opt.max_reward = 3;
    opt.prob_denominator = 2;
    opt.max_out_degree = 2;
    opt.seed = seed;
    BwrGame g = generate_game(opt);
    GameSolution sol = solve_exact(g, 100000);
    REQUIRE(sol.certified);
    for (const auto& v : sol.values) {
      CHECK(v >= 0);
      CHECK(v <= 3);
    }
  }
}
