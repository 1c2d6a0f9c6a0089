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

#ifndef BWR_TESTS_HELPERS_HPP_
#define BWR_TESTS_HELPERS_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "bwr/game.hpp"
#include "bwr/game_io.hpp"
#include "bwr/rational.hpp"

namespace bwrtest {

using bwr::BwrGame;
using bwr::GameDesc;
using bwr::Owner;
using bwr::Rational;

struct DescBuilder {
  GameDesc d;
  DescBuilder& pos(const std::string& id, Owner o) {
    d.positions.push_back({id, o});
    return *this;
  }
  DescBuilder& arc(const std::string& from, const std::string& to, long reward) {
    d.arcs.push_back({from, to, Rational(reward), std::nullopt});
    return *this;
  }
  DescBuilder& arc(const std::string& from, const std::string& to, long reward, long pnum,
                   long pden) {
    Rational p(pnum, pden);
    p.canonicalize();
    d.arcs.push_back({from, to, Rational(reward), p});
    return *this;
  }
  BwrGame build(bwr::MergePolicy m = bwr::MergePolicy::Strict) const {
    return bwr::validate(d, m);
  }
};

// Single White position with a self-loop of reward 5. Value 5.
inline BwrGame g_loop() {
  return DescBuilder().pos("w", Owner::White).arc("w", "w", 5).build();
}

// Two-cycle w -> b (reward 5), b -> w (reward 1). Value 3 everywhere;
// x = (w:0, b:2) is a canonical potential.
inline BwrGame g_cycle() {
  return DescBuilder()
      .pos("w", Owner::White)
      .pos("b", Owner::Black)
      .arc("w", "b", 5)
      .arc("b", "w", 1)
      .build();
}

// White w chooses between self-looping positions a (Black, reward 4) and
// b (Black, reward 2). Values (w:4, a:4, b:2); top class {w,a}, bottom {b}.
inline BwrGame g_choice() {
  return DescBuilder()
      .pos("w", Owner::White)
      .pos("a", Owner::Black)
      .pos("b", Owner::Black)
      .arc("w", "a", 0)
      .arc("w", "b", 0)
      .arc("a", "a", 4)
      .arc("b", "b", 2)
      .build();
}

// Random r moves to w or b with probability 1/2 each (reward 0);
// w -> r reward 6, b -> r reward 0. Ergodic, value 3/2, stationary
// distribution (r:1/2, w:1/4, b:1/4).
inline BwrGame g_rand() {
  return DescBuilder()
      .pos("r", Owner::Random)
      .pos("w", Owner::White)
      .pos("b", Owner::Black)
      .arc("r", "w", 0, 1, 2)
      .arc("r", "b", 0, 1, 2)
      .arc("w", "r", 6)
      .arc("b", "r", 0)
      .build();
}

// Random r splits into two absorbing self-loops a (reward 4) and b
// (reward 2). Values (r:3, a:4, b:2).
inline BwrGame g_rand2() {
  return DescBuilder()
      .pos("r", Owner::Random)
      .pos("a", Owner::White)
      .pos("b", Owner::Black)
      .arc("r", "a", 0, 1, 2)
      .arc("r", "b", 0, 1, 2)
      .arc("a", "a", 4)
      .arc("b", "b", 2)
      .build();
}

inline BwrGame load_fixture(const std::string& name) {
  std::string path = std::string(BWR_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture: " + path);
  nlohmann::json j;
  in >> j;
  return bwr::validate(bwr::game_desc_from_json(j));
}

}  // namespace bwrtest

#endif  // BWR_TESTS_HELPERS_HPP_
