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

// Regression corpus: every fixture game is classified and checked against
// its independently certified expected output.

#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "bwr/oracle.hpp"
#include "bwr/solver.hpp"
#include "helpers.hpp"

using namespace bwr;

namespace {

nlohmann::json load_expected() {
  std::ifstream in(std::string(BWR_FIXTURE_DIR) + "/expected.json");
  REQUIRE(in);
  nlohmann::json j;
  in >> j;
  return j;
}

Rational rat(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

std::set<int> id_set(const BwrGame& g, const nlohmann::json& ids) {
  std::set<int> s;
  for (const auto& id : ids) s.insert(g.index_of(id.get<std::string>()));
  return s;
}

}  // namespace

TEST_CASE("the regression corpus matches its certified expectations") {
  nlohmann::json expected = load_expected();
  REQUIRE(expected.size() == 20);
  for (const auto& [name, exp] : expected.items()) {
    INFO("fixture " << name);
    BwrGame g = bwrtest::load_fixture(name + ".json");

    GameSolution sol = solve_exact(g, 2000000);
    REQUIRE(sol.certified);
    for (int v = 0; v < g.size(); ++v) {
      CHECK(sol.values[v] == rat(exp["values"][g.id_of(v)].get<std::string>()));
    }

    ClassificationResult res = classify(g, Mode::Practical);
    CHECK(res.t_max == rat(exp["t_max"].get<std::string>()));
    CHECK(res.t_min == rat(exp["t_min"].get<std::string>()));
    CHECK(res.top == id_set(g, exp["top"]));
    CHECK(res.bottom == id_set(g, exp["bottom"]));
  }
}

TEST_CASE("fixture JSON round-trips through the serializer") {
  nlohmann::json expected = load_expected();
  for (const auto& [name, exp] : expected.items()) {
    BwrGame g = bwrtest::load_fixture(name + ".json");
    BwrGame g2 = validate(game_desc_from_json(game_to_json(g)));
    CHECK(game_to_json(g2) == game_to_json(g));
  }
}
