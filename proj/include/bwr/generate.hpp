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

// Seeded random game generation: exactly k Random positions, simple
// out-neighbourhoods, integer rewards in [0, U], and Random arc
// probabilities that are positive multiples of 1/D summing to 1.

#ifndef BWR_GENERATE_HPP_
#define BWR_GENERATE_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bwr/game.hpp"

namespace bwr {

struct GenerateOptions {
  int n = 3;
  int k = 0;
  long max_reward = 3;       // U
  long prob_denominator = 1; // D
  int min_out_degree = 1;
  int max_out_degree = 2;
  std::uint64_t seed = 0;
};

namespace detail {

// Bounded draw with a fixed mapping from raw engine output, so generated
// games are identical across standard library implementations.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace detail

inline BwrGame generate_game(const GenerateOptions& opt) {
  if (opt.n < 1) throw GameError("generate: n must be at least 1");
  if (opt.k < 0 || opt.k > opt.n) throw GameError("generate: k must be in [0, n]");
  if (opt.max_reward < 0) throw GameError("generate: U must be non-negative");
  if (opt.prob_denominator < 1) throw GameError("generate: D must be at least 1");
  if (opt.min_out_degree < 1 || opt.min_out_degree > opt.max_out_degree) {
    throw GameError("generate: out-degree range must satisfy 1 <= min <= max");
  }
  if (opt.min_out_degree > opt.n) {
    throw GameError("generate: out-degree exceeds the number of positions");
  }
  if (opt.k > 0 && opt.min_out_degree > opt.prob_denominator) {
    throw GameError("generate: D too small to split among the minimum out-degree");
  }

  std::mt19937_64 rng(opt.seed);
  GameDesc desc;

  // Exactly k Random positions, chosen by a partial Fisher-Yates shuffle.
  std::vector<int> order(opt.n);
  for (int i = 0; i < opt.n; ++i) order[i] = i;
  for (int i = 0; i < opt.k; ++i) {
    int j = static_cast<int>(detail::draw(rng, i, opt.n - 1));
    std::swap(order[i], order[j]);
  }
  std::vector<Owner> owner(opt.n);
  for (int i = 0; i < opt.n; ++i) {
    owner[order[i]] = i < opt.k ? Owner::Random
                                : (detail::draw(rng, 0, 1) ? Owner::Black : Owner::White);
  }
  for (int v = 0; v < opt.n; ++v) {
    desc.positions.push_back({"v" + std::to_string(v), owner[v]});
  }

  for (int v = 0; v < opt.n; ++v) {
    long cap = std::min<long>(opt.max_out_degree, opt.n);
    if (owner[v] == Owner::Random) cap = std::min<long>(cap, opt.prob_denominator);
    long d = detail::draw(rng, opt.min_out_degree, cap);

    // Distinct targets by a partial shuffle.
    std::vector<int> targets(opt.n);
    for (int i = 0; i < opt.n; ++i) targets[i] = i;
    for (long i = 0; i < d; ++i) {
      int j = static_cast<int>(detail::draw(rng, i, opt.n - 1));
      std::swap(targets[i], targets[j]);
    }

    // A uniform composition of D into d positive parts, via distinct cut
    // points in 1..D-1.
    std::vector<long> parts;
    if (owner[v] == Owner::Random) {
      std::vector<long> cuts(opt.prob_denominator - 1);
      for (long i = 0; i < opt.prob_denominator - 1; ++i) cuts[i] = i + 1;
      for (long i = 0; i < d - 1; ++i) {
        long j = detail::draw(rng, i, opt.prob_denominator - 2);
        std::swap(cuts[i], cuts[j]);
      }
      cuts.resize(d - 1);
      std::sort(cuts.begin(), cuts.end());
      long prev = 0;
      for (long c : cuts) {
        parts.push_back(c - prev);
        prev = c;
      }
      parts.push_back(opt.prob_denominator - prev);
    }

    for (long i = 0; i < d; ++i) {
      GameDesc::ArcDesc a;
      a.from = desc.positions[v].id;
      a.to = desc.positions[targets[i]].id;
      a.reward = Rational(detail::draw(rng, 0, opt.max_reward));
      if (owner[v] == Owner::Random) {
        Rational p(parts[i], opt.prob_denominator);
        p.canonicalize();
        a.prob = p;
      }
      desc.arcs.push_back(std::move(a));
    }
  }
  return validate(desc);
}

}  // namespace bwr

#endif  // BWR_GENERATE_HPP_
