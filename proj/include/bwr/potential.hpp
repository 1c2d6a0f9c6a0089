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

#ifndef BWR_POTENTIAL_HPP_
#define BWR_POTENTIAL_HPP_

#include <set>
#include <string>
#include <vector>

#include "bwr/game.hpp"
#include "bwr/rational.hpp"

namespace bwr {

// Values indexed by position. All potential/value arithmetic is exact; a
// potential produced by numeric code is a dyadic rational anyway.
using VertexMap = std::vector<Rational>;
using ArcMap = std::vector<Rational>;  // indexed like game.arcs()

// r_x(v,u) = r(v,u) + x(v) - x(u).
inline ArcMap apply_potential(const BwrGame& g, const VertexMap& x) {
  if (static_cast<int>(x.size()) != g.size()) throw GameError("potential vector size mismatch");
  ArcMap rx(g.arcs().size());
  for (size_t i = 0; i < g.arcs().size(); ++i) {
    const Arc& a = g.arcs()[i];
    rx[i] = a.reward + x[a.from] - x[a.to];
  }
  return rx;
}

// M[f](v): max over outgoing arcs at White, min at Black, expectation at Random.
inline VertexMap m_of_rewards(const BwrGame& g, const ArcMap& f) {
  if (f.size() != g.arcs().size()) throw GameError("arc map size mismatch");
  VertexMap m(g.size());
  for (int v = 0; v < g.size(); ++v) {
    const auto& arcs = g.out(v);
    if (g.owner(v) == Owner::Random) {
      Rational s = 0;
      for (int a : arcs) s += g.arc(a).prob * f[a];
      m[v] = s;
    } else {
      Rational best = f[arcs[0]];
      for (int a : arcs) {
        if (g.owner(v) == Owner::White ? f[a] > best : f[a] < best) best = f[a];
      }
      m[v] = best;
    }
  }
  return m;
}

// M[g](v): same aggregation over successor values.
inline VertexMap m_of_values(const BwrGame& g, const VertexMap& vals) {
  if (static_cast<int>(vals.size()) != g.size()) throw GameError("vertex map size mismatch");
  ArcMap f(g.arcs().size());
  for (size_t i = 0; i < g.arcs().size(); ++i) f[i] = vals[g.arcs()[i].to];
  return m_of_rewards(g, f);
}

struct CanonicalReport {
  std::vector<bool> c1_values_ok;   // mu(v) == M[mu](v) within tol
  std::vector<bool> c1_rewards_ok;  // mu(v) == M[r_x](v) within tol
  std::vector<bool> c2_ok;          // per arc; vacuously true off locally optimal arcs
  Rational tol;
  bool all_ok = false;
};

// (C1) mu = M[mu] = M[r_x]; (C2) every locally optimal move is globally
// optimal. C1 is checked within tol, C2 exactly on arcs whose r_x matches
// mu(v) within tol.
inline CanonicalReport check_canonical(const BwrGame& g, const VertexMap& mu, const VertexMap& x,
                                       const Rational& tol) {
  CanonicalReport rep;
  rep.tol = tol;
  ArcMap rx = apply_potential(g, x);
  VertexMap m_mu = m_of_values(g, mu);
  VertexMap m_rx = m_of_rewards(g, rx);
  rep.c1_values_ok.resize(g.size());
  rep.c1_rewards_ok.resize(g.size());
  rep.c2_ok.assign(g.arcs().size(), true);
  rep.all_ok = true;
  auto near_tol = [&](const Rational& a, const Rational& b) {
    Rational d = a - b;
    if (d < 0) d = -d;
    return d <= tol;
  };
  for (int v = 0; v < g.size(); ++v) {
    rep.c1_values_ok[v] = near_tol(mu[v], m_mu[v]);
    rep.c1_rewards_ok[v] = near_tol(mu[v], m_rx[v]);
    if (!rep.c1_values_ok[v] || !rep.c1_rewards_ok[v]) rep.all_ok = false;
  }
  for (size_t i = 0; i < g.arcs().size(); ++i) {
    const Arc& a = g.arcs()[i];
    if (g.owner(a.from) == Owner::Random) continue;
    if (near_tol(rx[i], mu[a.from])) {
      rep.c2_ok[i] = mu[a.from] == mu[a.to];
      if (!rep.c2_ok[i]) rep.all_ok = false;
    }
  }
  return rep;
}

struct ClassPropertyReport {
  // Conditions (i)..(viii); witness holds an offending arc or vertex id.
  struct Item {
    bool ok = true;
    std::string witness;
  };
  Item item[8];
  bool all_ok() const {
    for (const auto& it : item) {
      if (!it.ok) return false;
    }
    return true;
  }
};

// Structural conditions every top class T and bottom class B must satisfy.
inline ClassPropertyReport check_class_properties(const BwrGame& g, const std::set<int>& top,
                                                  const std::set<int>& bottom) {
  ClassPropertyReport rep;
  auto in = [](const std::set<int>& s, int v) { return s.count(v) != 0; };
  auto arc_str = [&](const Arc& a) { return g.id_of(a.from) + " -> " + g.id_of(a.to); };

  for (const auto& a : g.arcs()) {
    Owner o = g.owner(a.from);
    // (i) no arc from (White u Random) n B leaving B
    if ((o == Owner::White || o == Owner::Random) && in(bottom, a.from) && !in(bottom, a.to) &&
        rep.item[0].ok) {
      rep.item[0] = {false, arc_str(a)};
    }
    // (ii) no arc from (Black u Random) n T leaving T
    if ((o == Owner::Black || o == Owner::Random) && in(top, a.from) && !in(top, a.to) &&
        rep.item[1].ok) {
      rep.item[1] = {false, arc_str(a)};
    }
    // (iii) no arc from White \ T into T
    if (o == Owner::White && !in(top, a.from) && in(top, a.to) && rep.item[2].ok) {
      rep.item[2] = {false, arc_str(a)};
    }
    // (iv) no arc from Black \ B into B
    if (o == Owner::Black && !in(bottom, a.from) && in(bottom, a.to) && rep.item[3].ok) {
      rep.item[3] = {false, arc_str(a)};
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    Owner o = g.owner(v);
    bool has_into_top = false, has_into_bottom = false, has_out_top = false,
         has_out_bottom = false;
    for (int ai : g.out(v)) {
      int u = g.arc(ai).to;
      has_into_top |= in(top, u);
      has_into_bottom |= in(bottom, u);
      has_out_top |= !in(top, u);
      has_out_bottom |= !in(bottom, u);
    }
    // (v) White n T keeps a move inside T
    if (o == Owner::White && in(top, v) && !has_into_top && rep.item[4].ok) {
      rep.item[4] = {false, g.id_of(v)};
    }
    // (vi) Black n B keeps a move inside B
    if (o == Owner::Black && in(bottom, v) && !has_into_bottom && rep.item[5].ok) {
      rep.item[5] = {false, g.id_of(v)};
    }
    // (vii) (Black u Random) \ T has a move avoiding T
    if ((o == Owner::Black || o == Owner::Random) && !in(top, v) && !has_out_top &&
        rep.item[6].ok) {
      rep.item[6] = {false, g.id_of(v)};
    }
    // (viii) (White u Random) \ B has a move avoiding B
    if ((o == Owner::White || o == Owner::Random) && !in(bottom, v) && !has_out_bottom &&
        rep.item[7].ok) {
      rep.item[7] = {false, g.id_of(v)};
    }
  }
  return rep;
}

}  // namespace bwr

#endif  // BWR_POTENTIAL_HPP_
