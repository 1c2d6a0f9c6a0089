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

// Brute-force reference solver: enumerate pure stationary strategies,
// evaluate each profile exactly as a Markov chain, and take the maxmin.
// Exponential, but exact; used as ground truth for everything else.

#ifndef BWR_ORACLE_HPP_
#define BWR_ORACLE_HPP_

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bwr/exactlin.hpp"
#include "bwr/game.hpp"
#include "bwr/potential.hpp"
#include "bwr/rational.hpp"

namespace bwr {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Player { Max, Min };

inline Owner owner_of(Player p) { return p == Player::Max ? Owner::White : Owner::Black; }

// A pure stationary strategy: chosen arc index per owned position, -1
// elsewhere.
using Strategy = std::vector<int>;

namespace detail {

// Positions owned by `o`, sorted by position id; each paired with its
// outgoing arcs sorted by target id. Fixes the enumeration order.
inline std::vector<std::pair<int, std::vector<int>>> owned_choices(const BwrGame& g, Owner o) {
  std::vector<std::pair<int, std::vector<int>>> out;
  std::vector<int> verts;
  for (int v = 0; v < g.size(); ++v) {
    if (g.owner(v) == o) verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end(),
            [&](int a, int b) { return g.id_of(a) < g.id_of(b); });
  for (int v : verts) {
    std::vector<int> arcs = g.out(v);
    std::sort(arcs.begin(), arcs.end(), [&](int a, int b) {
      return g.id_of(g.arc(a).to) < g.id_of(g.arc(b).to);
    });
    out.emplace_back(v, std::move(arcs));
  }
  return out;
}

}  // namespace detail

inline Integer strategy_count(const BwrGame& g, Player p) {
  Integer c = 1;
  for (const auto& [v, arcs] : detail::owned_choices(g, owner_of(p))) c *= arcs.size();
  return c;
}

// Visits every pure stationary strategy of `p` in lexicographic order
// (positions sorted by id, choices by target id). Throws if the count
// exceeds `cap`. Returns the number visited, or stops early if fn returns
// false.
inline unsigned long for_each_pure_strategy(const BwrGame& g, Player p, Integer cap,
                                            const std::function<bool(const Strategy&)>& fn) {
  Integer count = strategy_count(g, p);
  if (count > cap) {
    throw OracleError("strategy count " + to_string(count) + " exceeds cap " + to_string(cap));
  }
  auto choices = detail::owned_choices(g, owner_of(p));
  Strategy s(g.size(), -1);
  std::vector<size_t> idx(choices.size(), 0);
  for (const auto& [v, arcs] : choices) s[v] = arcs[0];
  unsigned long visited = 0;
  for (;;) {
    ++visited;
    if (!fn(s)) return visited;
    size_t j = choices.size();
    while (j > 0) {
      --j;
      if (++idx[j] < choices[j].second.size()) {
        s[choices[j].first] = choices[j].second[idx[j]];
        break;
      }
      idx[j] = 0;
      s[choices[j].first] = choices[j].second[0];
      if (j == 0) return visited;
    }
    if (choices.empty()) return visited;
  }
}

inline std::vector<Strategy> enumerate_pure_strategies(const BwrGame& g, Player p,
                                                       Integer cap = 10000000) {
  std::vector<Strategy> out;
  for_each_pure_strategy(g, p, cap, [&](const Strategy& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// Exact analysis of the Markov chain induced by a strategy profile.
struct ProfileEvaluation {
  VertexMap gain;               // limiting mean payoff from each start
  VertexMap bias;               // h with gain + h = rbar + P*h, h=0 at each
                                // class representative
  std::vector<int> class_of;    // recurrent class index, -1 for transient
  std::vector<std::vector<std::pair<int, Rational>>> stationary;  // per class
  std::vector<Rational> class_gain;
  RatMatrix absorption;         // absorption[v][c], rows only for all v
};

inline ProfileEvaluation evaluate_profile(const BwrGame& g, const Strategy& smax,
                                          const Strategy& smin) {
  int n = g.size();
  // One-step transition lists and expected rewards under the profile.
  std::vector<std::vector<std::pair<int, Rational>>> succ(n);
  VertexMap rbar(n, Rational(0));
  for (int v = 0; v < n; ++v) {
    if (g.owner(v) == Owner::Random) {
      for (int ai : g.out(v)) {
        const Arc& a = g.arc(ai);
        succ[v].emplace_back(a.to, a.prob);
        rbar[v] += a.prob * a.reward;
      }
    } else {
      const Strategy& s = g.owner(v) == Owner::White ? smax : smin;
      int ai = s[v];
      if (ai < 0 || static_cast<size_t>(ai) >= g.arcs().size() || g.arc(ai).from != v) {
        throw OracleError("profile has no valid choice at " + g.id_of(v));
      }
      succ[v].emplace_back(g.arc(ai).to, Rational(1));
      rbar[v] = g.arc(ai).reward;
    }
  }

  // Strongly connected components, iterative Tarjan.
  std::vector<int> comp(n, -1), low(n), num(n, -1), stack, callstack;
  std::vector<size_t> iter(n, 0);
  std::vector<bool> onstack(n, false);
  int timer = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    callstack.push_back(root);
    while (!callstack.empty()) {
      int v = callstack.back();
      if (iter[v] == 0) {
        num[v] = low[v] = timer++;
        stack.push_back(v);
        onstack[v] = true;
      }
      if (iter[v] < succ[v].size()) {
        int u = succ[v][iter[v]++].first;
        if (num[u] == -1) {
          callstack.push_back(u);
        } else if (onstack[u]) {
          low[v] = std::min(low[v], num[u]);
        }
      } else {
        if (low[v] == num[v]) {
          for (;;) {
            int u = stack.back();
            stack.pop_back();
            onstack[u] = false;
            comp[u] = ncomp;
            if (u == v) break;
          }
          ++ncomp;
        }
        callstack.pop_back();
        if (!callstack.empty()) low[callstack.back()] = std::min(low[callstack.back()], low[v]);
      }
    }
  }

  // A component is recurrent iff no arc leaves it.
  std::vector<bool> leaves(ncomp, false);
  for (int v = 0; v < n; ++v) {
    for (const auto& [u, pr] : succ[v]) {
      if (comp[u] != comp[v]) leaves[comp[v]] = true;
    }
  }
  ProfileEvaluation ev;
  ev.class_of.assign(n, -1);
  std::vector<int> class_id(ncomp, -1);
  std::vector<std::vector<int>> class_states;
  for (int v = 0; v < n; ++v) {
    if (!leaves[comp[v]]) {
      if (class_id[comp[v]] == -1) {
        class_id[comp[v]] = static_cast<int>(class_states.size());
        class_states.emplace_back();
      }
      ev.class_of[v] = class_id[comp[v]];
      class_states[class_id[comp[v]]].push_back(v);
    }
  }
  int nclasses = static_cast<int>(class_states.size());

  // Stationary distribution and gain per recurrent class.
  ev.stationary.resize(nclasses);
  ev.class_gain.assign(nclasses, Rational(0));
  for (int c = 0; c < nclasses; ++c) {
    const auto& states = class_states[c];
    size_t m = states.size();
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < m; ++i) pos[states[i]] = static_cast<int>(i);
    RatMatrix mat(m, std::vector<Rational>(m, Rational(0)));
    RatMatrix rhs(m, std::vector<Rational>(1, Rational(0)));
    // Balance rows for all but the last state, then normalization.
    for (size_t i = 0; i < m; ++i) {
      for (const auto& [u, pr] : succ[states[i]]) {
        size_t j = static_cast<size_t>(pos[u]);
        if (j + 1 < m) mat[j][i] += pr;
      }
      if (i + 1 < m) mat[i][i] -= 1;
      mat[m - 1][i] = 1;
    }
    rhs[m - 1][0] = 1;
    RatMatrix pi = solve_linear(mat, rhs);
    for (size_t i = 0; i < m; ++i) {
      ev.stationary[c].emplace_back(states[i], pi[i][0]);
      ev.class_gain[c] += pi[i][0] * rbar[states[i]];
    }
  }

  // Absorption probabilities from transient states, then gains everywhere.
  std::vector<int> transient;
  for (int v = 0; v < n; ++v) {
    if (ev.class_of[v] == -1) transient.push_back(v);
  }
  ev.absorption.assign(n, std::vector<Rational>(nclasses, Rational(0)));
  for (int v = 0; v < n; ++v) {
    if (ev.class_of[v] != -1) ev.absorption[v][ev.class_of[v]] = 1;
  }
  if (!transient.empty()) {
    size_t m = transient.size();
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < m; ++i) pos[transient[i]] = static_cast<int>(i);
    RatMatrix mat(m, std::vector<Rational>(m, Rational(0)));
    RatMatrix rhs(m, std::vector<Rational>(nclasses, Rational(0)));
    for (size_t i = 0; i < m; ++i) {
      mat[i][i] = 1;
      for (const auto& [u, pr] : succ[transient[i]]) {
        if (ev.class_of[u] == -1) {
          mat[i][pos[u]] -= pr;
        } else {
          rhs[i][ev.class_of[u]] += pr;
        }
      }
    }
    RatMatrix a = solve_linear(mat, rhs);
    for (size_t i = 0; i < m; ++i) ev.absorption[transient[i]] = a[i];
  }
  ev.gain.assign(n, Rational(0));
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < nclasses; ++c) ev.gain[v] += ev.absorption[v][c] * ev.class_gain[c];
  }

  // Bias: (I - P) h = rbar - gain, pinned to 0 at each class's first state.
  {
    RatMatrix mat(n, std::vector<Rational>(n, Rational(0)));
    RatMatrix rhs(n, std::vector<Rational>(1, Rational(0)));
    std::vector<bool> pinned(nclasses, false);
    for (int v = 0; v < n; ++v) {
      int c = ev.class_of[v];
      if (c != -1 && !pinned[c]) {
        pinned[c] = true;
        mat[v][v] = 1;
        continue;
      }
      mat[v][v] += 1;
      for (const auto& [u, pr] : succ[v]) mat[v][u] -= pr;
      rhs[v][0] = rbar[v] - ev.gain[v];
    }
    RatMatrix h = solve_linear(mat, rhs);
    ev.bias.resize(n);
    for (int v = 0; v < n; ++v) ev.bias[v] = h[v][0];
  }
  return ev;
}

struct BestResponse {
  Strategy strategy;
  VertexMap values;
};

// Componentwise optimum of the responder against a fixed opposing strategy;
// ties broken by enumeration order. A single uniformly optimal response
// exists because the fixed-opponent game is a Markov decision process.
inline BestResponse best_response(const BwrGame& g, const Strategy& fixed, Player responder,
                                  Integer cap = 10000000) {
  bool maximize = responder == Player::Max;
  std::vector<std::pair<Strategy, VertexMap>> evals;
  for_each_pure_strategy(g, responder, cap, [&](const Strategy& s) {
    VertexMap gain = maximize ? evaluate_profile(g, s, fixed).gain
                              : evaluate_profile(g, fixed, s).gain;
    evals.emplace_back(s, std::move(gain));
    return true;
  });
  VertexMap best = evals[0].second;
  for (const auto& [s, gain] : evals) {
    for (int v = 0; v < g.size(); ++v) {
      if (maximize ? gain[v] > best[v] : gain[v] < best[v]) best[v] = gain[v];
    }
  }
  for (const auto& [s, gain] : evals) {
    if (gain == best) return {s, best};
  }
  throw OracleError("no uniformly optimal response exists");
}

struct GameSolution {
  VertexMap values;
  Strategy max_strategy;
  Strategy min_strategy;
  bool certified = false;
};

// Exact game values by full enumeration: maxmin over pure stationary
// profiles, verified to equal minmax, with a uniformly optimal pair.
inline GameSolution solve_exact(const BwrGame& g, Integer cap = 10000000) {
  Integer profiles = strategy_count(g, Player::Max) * strategy_count(g, Player::Min);
  if (profiles > cap) {
    throw OracleError("profile count " + to_string(profiles) + " exceeds cap " + to_string(cap));
  }
  std::vector<Strategy> smax = enumerate_pure_strategies(g, Player::Max, cap);
  std::vector<Strategy> smin = enumerate_pure_strategies(g, Player::Min, cap);

  int n = g.size();
  std::vector<VertexMap> row_min(smax.size());            // min over tau for each sigma
  std::vector<VertexMap> col_max(smin.size());            // max over sigma for each tau
  for (size_t i = 0; i < smax.size(); ++i) {
    for (size_t j = 0; j < smin.size(); ++j) {
      VertexMap gain = evaluate_profile(g, smax[i], smin[j]).gain;
      if (j == 0) {
        row_min[i] = gain;
      } else {
        for (int v = 0; v < n; ++v) row_min[i][v] = std::min(row_min[i][v], gain[v]);
      }
      if (i == 0) {
        col_max[j] = gain;
      } else {
        for (int v = 0; v < n; ++v) col_max[j][v] = std::max(col_max[j][v], gain[v]);
      }
    }
  }
  VertexMap maxmin = row_min[0], minmax = col_max[0];
  for (const auto& r : row_min) {
    for (int v = 0; v < n; ++v) maxmin[v] = std::max(maxmin[v], r[v]);
  }
  for (const auto& c : col_max) {
    for (int v = 0; v < n; ++v) minmax[v] = std::min(minmax[v], c[v]);
  }
  if (maxmin != minmax) {
    throw OracleError("maxmin differs from minmax; determinacy violated");
  }

  GameSolution sol;
  sol.values = maxmin;
  bool found_max = false, found_min = false;
  for (size_t i = 0; i < smax.size() && !found_max; ++i) {
    if (row_min[i] == maxmin) {
      sol.max_strategy = smax[i];
      found_max = true;
    }
  }
  for (size_t j = 0; j < smin.size() && !found_min; ++j) {
    if (col_max[j] == minmax) {
      sol.min_strategy = smin[j];
      found_min = true;
    }
  }
  sol.certified = found_max && found_min &&
                  evaluate_profile(g, sol.max_strategy, sol.min_strategy).gain == sol.values;
  return sol;
}

}  // namespace bwr

#endif  // BWR_ORACLE_HPP_
