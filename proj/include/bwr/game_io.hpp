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

#ifndef BWR_GAME_IO_HPP_
#define BWR_GAME_IO_HPP_

#include <sstream>
#include <string>

#include <json.hpp>

#include "bwr/game.hpp"

namespace bwr {

// Game schema:
//   {"positions":[{"id":string,"owner":"white"|"black"|"random"}],
//    "arcs":[{"from":string,"to":string,"reward":integer,
//             "prob":{"num":integer,"den":integer}?}]}

inline Owner owner_from_string(const std::string& s) {
  if (s == "white") return Owner::White;
  if (s == "black") return Owner::Black;
  if (s == "random") return Owner::Random;
  throw GameError("unknown owner: " + s);
}

inline GameDesc game_desc_from_json(const nlohmann::json& j) {
  GameDesc d;
  if (!j.is_object() || !j.contains("positions") || !j.contains("arcs")) {
    throw GameError("game JSON must be an object with 'positions' and 'arcs'");
  }
  for (const auto& p : j.at("positions")) {
    d.positions.push_back({p.at("id").get<std::string>(),
                           owner_from_string(p.at("owner").get<std::string>())});
  }
  for (const auto& a : j.at("arcs")) {
    GameDesc::ArcDesc ad;
    ad.from = a.at("from").get<std::string>();
    ad.to = a.at("to").get<std::string>();
    ad.reward = Rational(static_cast<long>(a.at("reward").get<long long>()));
    if (a.contains("prob") && !a.at("prob").is_null()) {
      long long num = a.at("prob").at("num").get<long long>();
      long long den = a.at("prob").at("den").get<long long>();
      if (den == 0) throw GameError("probability with zero denominator");
      Rational p(static_cast<long>(num), static_cast<long>(den));
      p.canonicalize();
      ad.prob = p;
    }
    d.arcs.push_back(std::move(ad));
  }
  return d;
}

inline nlohmann::json game_to_json(const BwrGame& g) {
  nlohmann::json j;
  j["positions"] = nlohmann::json::array();
  j["arcs"] = nlohmann::json::array();
  for (int v = 0; v < g.size(); ++v) {
    j["positions"].push_back({{"id", g.id_of(v)}, {"owner", owner_name(g.owner(v))}});
  }
  for (const auto& a : g.arcs()) {
    nlohmann::json ja = {{"from", g.id_of(a.from)},
                         {"to", g.id_of(a.to)},
                         {"reward", static_cast<long long>(numerator(a.reward).get_si())}};
    if (!is_integer(a.reward)) {
      // Expectation-merged arcs can carry fractional rewards; keep them exact.
      ja["reward"] = nullptr;
      ja["reward_rational"] = to_string(a.reward);
    }
    if (g.owner(a.from) == Owner::Random) {
      ja["prob"] = {{"num", static_cast<long long>(numerator(a.prob).get_si())},
                    {"den", static_cast<long long>(denominator(a.prob).get_si())}};
    }
    j["arcs"].push_back(std::move(ja));
  }
  return j;
}

// DOT rendering: White = box, Black = diamond, Random = circle;
// edge label "r=<reward>[, p=<num>/<den>]".
inline std::string game_to_dot(const BwrGame& g) {
  std::ostringstream os;
  os << "digraph bwr {\n";
  for (int v = 0; v < g.size(); ++v) {
    const char* shape = g.owner(v) == Owner::White   ? "box"
                        : g.owner(v) == Owner::Black ? "diamond"
                                                     : "circle";
    os << "  \"" << g.id_of(v) << "\" [shape=" << shape << "];\n";
  }
  for (const auto& a : g.arcs()) {
    os << "  \"" << g.id_of(a.from) << "\" -> \"" << g.id_of(a.to) << "\" [label=\"r="
       << to_string(a.reward);
    if (g.owner(a.from) == Owner::Random) {
      os << ", p=" << to_string(numerator(a.prob)) << "/" << to_string(denominator(a.prob));
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bwr

#endif  // BWR_GAME_IO_HPP_
