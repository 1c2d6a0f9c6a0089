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

#ifndef BWR_GAME_HPP_
#define BWR_GAME_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include "bwr/rational.hpp"

namespace bwr {

enum class Owner { White, Black, Random };

inline const char* owner_name(Owner o) {
  switch (o) {
    case Owner::White: return "white";
    case Owner::Black: return "black";
    case Owner::Random: return "random";
  }
  return "?";
}

struct GameError : std::runtime_error {
  explicit GameError(const std::string& m) : std::runtime_error(m) {}
};

// Raw, unvalidated description as it comes from JSON or a generator.
struct GameDesc {
  struct Pos {
    std::string id;
    Owner owner;
  };
  struct ArcDesc {
    std::string from, to;
    Rational reward;
    std::optional<Rational> prob;  // present iff `from` is a Random position
  };
  std::vector<Pos> positions;
  std::vector<ArcDesc> arcs;
};

// How parallel arcs out of a Random position with unequal rewards are
// handled at validation.
enum class MergePolicy {
  Strict,       // reject (paper behaviour: reward combination is unspecified)
  Expectation,  // merge into one arc carrying the probability-weighted reward
};

struct Arc {
  int from = -1;
  int to = -1;
  Rational reward;   // integral for validated inputs; may be fractional
                     // after an Expectation merge
  Rational prob;     // 0 for controlled positions
};

class BwrGame {
 public:
  BwrGame() = default;

  int size() const { return static_cast<int>(positions_.size()); }
  int random_count() const { return random_count_; }
  const Rational& max_reward() const { return max_reward_; }          // U
  const Integer& prob_denominator() const { return prob_den_; }      // D

  const std::string& id_of(int v) const { return positions_[v].id; }
  Owner owner(int v) const { return positions_[v].owner; }
  bool controlled(int v) const { return positions_[v].owner != Owner::Random; }
  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw GameError("unknown position id: " + id);
    return it->second;
  }
  bool has_id(const std::string& id) const { return index_.count(id) != 0; }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<int>& out(int v) const { return out_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }

  GameDesc describe() const {
    GameDesc d;
    for (const auto& p : positions_) d.positions.push_back({p.id, p.owner});
    for (const auto& a : arcs_) {
      GameDesc::ArcDesc ad;
      ad.from = positions_[a.from].id;
      ad.to = positions_[a.to].id;
      ad.reward = a.reward;
      if (owner(a.from) == Owner::Random) ad.prob = a.prob;
      d.arcs.push_back(std::move(ad));
    }
    return d;
  }

  // Copy with every reward multiplied by `factor` (used by paper-mode
  // parameter derivation, which wants rewards to be multiples of D).
  BwrGame scaled_rewards(const Rational& factor) const {
    BwrGame g = *this;
    for (auto& a : g.arcs_) a.reward *= factor;
    g.max_reward_ *= factor;
    return g;
  }

  friend BwrGame validate(const GameDesc& desc, MergePolicy merge);
  friend BwrGame induced_subgame(const BwrGame& game, const std::set<int>& keep);

 private:
  struct Pos {
    std::string id;
    Owner owner;
  };
  std::vector<Pos> positions_;
  std::vector<Arc> arcs_;             // sorted by (from, to id, reward)
  std::vector<std::vector<int>> out_; // arc indices per position
  std::map<std::string, int> index_;
  Rational max_reward_ = 0;
  Integer prob_den_ = 1;
  int random_count_ = 0;

  void finalize() {
    std::sort(arcs_.begin(), arcs_.end(), [this](const Arc& a, const Arc& b) {
      if (a.from != b.from) return a.from < b.from;
      if (a.to != b.to) return positions_[a.to].id < positions_[b.to].id;
      return a.reward < b.reward;
    });
    out_.assign(positions_.size(), {});
    max_reward_ = 0;
    prob_den_ = 1;
    random_count_ = 0;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      out_[arcs_[i].from].push_back(i);
      if (arcs_[i].reward > max_reward_) max_reward_ = arcs_[i].reward;
      if (arcs_[i].prob != 0) prob_den_ = lcm(prob_den_, denominator(arcs_[i].prob));
    }
    for (const auto& p : positions_) {
      if (p.owner == Owner::Random) ++random_count_;
    }
  }
};

inline BwrGame validate(const GameDesc& desc, MergePolicy merge = MergePolicy::Strict) {
  BwrGame g;
  for (const auto& p : desc.positions) {
    if (g.index_.count(p.id)) throw GameError("duplicate position id: " + p.id);
    g.index_[p.id] = static_cast<int>(g.positions_.size());
    g.positions_.push_back({p.id, p.owner});
  }
  if (g.positions_.empty()) throw GameError("game has no positions");

  for (const auto& a : desc.arcs) {
    auto fit = g.index_.find(a.from);
    auto tit = g.index_.find(a.to);
    if (fit == g.index_.end()) throw GameError("arc references unknown position: " + a.from);
    if (tit == g.index_.end()) throw GameError("arc references unknown position: " + a.to);
    if (a.reward < 0) throw GameError("negative reward on arc " + a.from + " -> " + a.to);
    bool random_src = g.positions_[fit->second].owner == Owner::Random;
    if (random_src) {
      if (!a.prob || *a.prob <= 0) {
        throw GameError("arc from random position " + a.from + " needs a positive probability");
      }
    } else if (a.prob) {
      throw GameError("arc from controlled position " + a.from + " must not carry a probability");
    }
    Arc arc;
    arc.from = fit->second;
    arc.to = tit->second;
    arc.reward = a.reward;
    arc.prob = random_src ? *a.prob : Rational(0);
    g.arcs_.push_back(arc);
  }

  // Merge parallel arcs out of Random positions. The softmax relaxation at
  // Random positions requires one arc per successor.
  {
    std::map<std::pair<int, int>, std::vector<Arc>> groups;
    std::vector<Arc> kept;
    for (const auto& a : g.arcs_) {
      if (g.positions_[a.from].owner == Owner::Random) {
        groups[{a.from, a.to}].push_back(a);
      } else {
        kept.push_back(a);
      }
    }
    for (auto& [key, v] : groups) {
      Arc m = v[0];
      if (v.size() > 1) {
        Rational psum = 0, expect = 0;
        bool same_reward = true;
        for (const auto& a : v) {
          psum += a.prob;
          expect += a.prob * a.reward;
          if (a.reward != v[0].reward) same_reward = false;
        }
        if (!same_reward && merge == MergePolicy::Strict) {
          throw GameError("parallel arcs from random position " + g.positions_[key.first].id +
                          " to " + g.positions_[key.second].id + " carry different rewards");
        }
        m.prob = psum;
        m.reward = same_reward ? v[0].reward : expect / psum;
      }
      kept.push_back(m);
    }
    g.arcs_ = std::move(kept);
  }

  std::vector<Rational> psum(g.positions_.size(), 0);
  std::vector<int> outdeg(g.positions_.size(), 0);
  for (const auto& a : g.arcs_) {
    ++outdeg[a.from];
    psum[a.from] += a.prob;
  }
  for (int v = 0; v < static_cast<int>(g.positions_.size()); ++v) {
    if (outdeg[v] == 0) throw GameError("position " + g.positions_[v].id + " has no outgoing arc");
    if (g.positions_[v].owner == Owner::Random && psum[v] != 1) {
      throw GameError("probabilities at random position " + g.positions_[v].id + " sum to " +
                      to_string(psum[v]) + " != 1");
    }
  }

  g.finalize();
  return g;
}

// Restriction of `game` to the vertex set `keep` (position indices).
// Every controlled vertex must keep at least one move and every Random
// vertex must keep all of its arcs.
inline BwrGame induced_subgame(const BwrGame& game, const std::set<int>& keep) {
  if (keep.empty()) throw GameError("induced subgame over empty vertex set");
  BwrGame g;
  std::vector<int> remap(game.size(), -1);
  for (int v : keep) {
    if (v < 0 || v >= game.size()) throw GameError("induced subgame: vertex out of range");
    remap[v] = static_cast<int>(g.positions_.size());
    g.positions_.push_back({game.id_of(v), game.owner(v)});
    g.index_[game.id_of(v)] = remap[v];
  }
  std::vector<int> outdeg(g.positions_.size(), 0);
  for (const auto& a : game.arcs()) {
    if (remap[a.from] < 0) continue;
    if (remap[a.to] < 0) {
      if (game.owner(a.from) == Owner::Random) {
        throw GameError("not closed: random position " + game.id_of(a.from) +
                        " has an arc leaving the set (to " + game.id_of(a.to) + ")");
      }
      continue;
    }
    Arc arc = a;
    arc.from = remap[a.from];
    arc.to = remap[a.to];
    g.arcs_.push_back(arc);
    ++outdeg[arc.from];
  }
  for (int v = 0; v < static_cast<int>(g.positions_.size()); ++v) {
    if (outdeg[v] == 0) throw GameError("dead end at " + g.positions_[v].id);
  }
  g.finalize();
  return g;
}

}  // namespace bwr

#endif  // BWR_GAME_HPP_
