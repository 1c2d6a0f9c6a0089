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

// Value and class pipeline: extreme values by binary search over the
// candidate-value grid, top/bottom class identification via per-vertex
// feasibility tests, ergodic solving, and strategy extraction on induced
// games. Infeasibility answers are exact certificates; feasibility answers
// carry a one-sided blur of eps = 2 log_b n, resolved by escalating the
// base exponent until the blur separates adjacent grid candidates.

#ifndef BWR_SOLVER_HPP_
#define BWR_SOLVER_HPP_

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bwr/ellipsoid.hpp"
#include "bwr/oracle.hpp"
#include "bwr/potential.hpp"

namespace bwr {

struct PrecisionError : GameError {
  explicit PrecisionError(const std::string& m) : GameError(m) {}
};

struct InconsistencyError : GameError {
  explicit InconsistencyError(const std::string& m) : GameError(m) {}
};

struct NotErgodicError : GameError {
  std::set<int> top;
  NotErgodicError(const std::string& m, std::set<int> t) : GameError(m), top(std::move(t)) {}
};

enum class Extreme { Max, Min };
enum class ClassSide { Top, Bottom };

// The unique rational with denominator <= maxden inside [lo, hi].
inline Rational round_to_rational(const Rational& lo, const Rational& hi,
                                  const Integer& maxden) {
  if (lo > hi) throw GameError("round_to_rational: empty interval");
  if (maxden < 1) throw GameError("round_to_rational: maxden must be positive");
  std::optional<Rational> found;
  for (Integer q = 1; q <= maxden; ++q) {
    Integer plo = ceil_rat(lo * Rational(q));
    Integer phi = floor_rat(hi * Rational(q));
    if (plo > phi) continue;
    if (phi > plo) throw GameError("round_to_rational: interval too wide");
    Rational cand(plo, q);
    cand.canonicalize();
    if (found && *found != cand) throw GameError("round_to_rational: interval too wide");
    found = cand;
  }
  if (!found) throw GameError("round_to_rational: no candidate in interval");
  return *found;
}

// An exact certificate (mu, x) with mu = M[mu] = M[r_x], built from the
// enumeration oracle. mu is the exact value vector; x is centered and, on
// arcs crossing value classes, strictly suboptimal for the arc's owner, so
// class-restricted witnesses stay tight inside the class.
struct CanonicalCertificate {
  GameSolution solution;
  VertexMap mu;
  VertexMap x;
  Rational top_value;
  Rational bottom_value;
};

namespace detail {

// Canonical potential from the bias of one optimal profile; fails (nullopt)
// when that bias is not bias-optimal, i.e. some off-profile arc beats it.
inline std::optional<VertexMap> canonical_potential(const BwrGame& g, const VertexMap& mu,
                                                    const Strategy& smax,
                                                    const Strategy& smin) {
  ProfileEvaluation ev = evaluate_profile(g, smax, smin);
  if (ev.gain != mu) return std::nullopt;
  const VertexMap& h = ev.bias;

  // x = -h - kappa*mu: on same-class arcs the bias equations make r_x equal
  // the value; kappa pushes cross-class controlled arcs strictly off-value.
  Rational kappa(0);
  for (const auto& a : g.arcs()) {
    if (mu[a.from] == mu[a.to]) continue;
    Owner o = g.owner(a.from);
    if (o == Owner::Random) continue;  // expectation cancels kappa
    Rational base_rx = a.reward - h[a.from] + h[a.to];
    Rational need;
    if (o == Owner::White) {
      if (mu[a.to] > mu[a.from]) return std::nullopt;  // values inconsistent
      need = (base_rx - mu[a.from]) / (mu[a.from] - mu[a.to]);
    } else {
      if (mu[a.to] < mu[a.from]) return std::nullopt;
      need = (mu[a.from] - base_rx) / (mu[a.to] - mu[a.from]);
    }
    kappa = std::max(kappa, need);
  }
  kappa += 1;

  int n = g.size();
  VertexMap x(n);
  for (int v = 0; v < n; ++v) x[v] = -h[v] - kappa * mu[v];
  Rational lo = x[0], hi = x[0];
  for (const auto& xv : x) {
    lo = std::min(lo, xv);
    hi = std::max(hi, xv);
  }
  Rational mid = (lo + hi) / 2;
  for (auto& xv : x) xv -= mid;

  CanonicalReport rep = check_canonical(g, mu, x, Rational(0));
  for (int v = 0; v < n; ++v) {
    if (!rep.c1_values_ok[v] || !rep.c1_rewards_ok[v]) return std::nullopt;
  }
  return x;
}

}  // namespace detail

inline std::optional<CanonicalCertificate> make_certificate(const BwrGame& g,
                                                            const Integer& cap) {
  GameSolution sol;
  try {
    sol = solve_exact(g, cap);
  } catch (const OracleError&) {
    return std::nullopt;
  }
  if (!sol.certified) return std::nullopt;
  const VertexMap& mu = sol.values;

  // The returned profile's bias need not be bias-optimal; search the other
  // value-optimal profiles for one whose bias passes the canonical check.
  std::optional<VertexMap> x = detail::canonical_potential(g, mu, sol.max_strategy,
                                                           sol.min_strategy);
  if (!x) {
    try {
      std::vector<Strategy> maxs = enumerate_pure_strategies(g, Player::Max, cap);
      std::vector<Strategy> mins = enumerate_pure_strategies(g, Player::Min, cap);
      Integer pairs = Integer(maxs.size()) * Integer(mins.size());
      if (pairs <= cap) {
        for (const Strategy& sm : maxs) {
          for (const Strategy& sn : mins) {
            if (sm == sol.max_strategy && sn == sol.min_strategy) continue;
            x = detail::canonical_potential(g, mu, sm, sn);
            if (x) {
              sol.max_strategy = sm;
              sol.min_strategy = sn;
              break;
            }
          }
          if (x) break;
        }
      }
    } catch (const OracleError&) {
    }
  }
  if (!x) return std::nullopt;

  CanonicalCertificate cert;
  cert.mu = mu;
  cert.x = std::move(*x);
  cert.solution = std::move(sol);
  cert.top_value = *std::max_element(cert.mu.begin(), cert.mu.end());
  cert.bottom_value = *std::min_element(cert.mu.begin(), cert.mu.end());
  return cert;
}

struct SolverOptions {
  Mode mode = Mode::Practical;
  long practical_exponent = 8;
  bool force = false;             // bypass the paper-mode size gate
  Integer hint_cap = 2000000;     // oracle enumeration cap for warm starts; 0 disables
  mpfr_prec_t precision_bits = 0;
  std::ostream* trace = nullptr;
};

struct SolverContext {
  const BwrGame* game = nullptr;
  SolverOptions opt;
  GameParams params;  // parameters used for ellipsoid probes
  GameParams sharp;   // high-exponent parameters for exact witness checks
  std::optional<CanonicalCertificate> hint;
};

namespace detail {

inline GameParams escalate_base(GameParams p) {
  p.base.rho *= 2;
  p.eps_eff_upper /= 2;
  return p;
}

// Upper bound on the one-sided blur of a conclusion drawn from an exact
// check of the relaxed system: softmax loss plus slack absorption, at most
// 2 log_b n + 2 log_b 2 <= 2 * (2 log_b n) for n >= 2.
inline Rational witness_blur(const GameParams& p) { return 2 * p.eps_eff_upper; }

// All rationals in [0, hi] with denominator <= maxden, sorted.
inline std::vector<Rational> value_candidates(const Rational& hi, long maxden) {
  std::set<Rational> s;
  for (long q = 1; q <= maxden; ++q) {
    Integer pmax = floor_rat(hi * Rational(q));
    for (Integer p = 0; p <= pmax; ++p) {
      Rational c(p, q);
      c.canonicalize();
      s.insert(c);
    }
  }
  return {s.begin(), s.end()};
}

// y = b^{-x} (Lower) or b^{x} (Upper) on the support, 0 elsewhere, with the
// potential scaled into the system's reward space.
inline SymbolicPoint witness_point(const GameParams& p, Direction dir, const VertexMap& x,
                                   const std::set<int>& support) {
  SymbolicPoint y;
  y.reserve(x.size());
  for (size_t v = 0; v < x.size(); ++v) {
    if (support.count(static_cast<int>(v))) {
      Rational e = x[v] * p.reward_scale;
      y.push_back(p.b_pow(dir == Direction::Lower ? -e : e));
    } else {
      y.push_back(BSum::constant(p.base, Rational(0)));
    }
  }
  return y;
}

inline std::set<int> all_vertices(int n) {
  std::set<int> s;
  for (int v = 0; v < n; ++v) s.insert(v);
  return s;
}

inline bool witness_feasible(const BwrGame& g, const GameParams& p, Direction dir,
                             const Rational& t, const std::set<int>& bound_set,
                             const VertexMap& x, const std::set<int>& support) {
  FeasibilitySystem sys = build_system(g, p, dir, t, bound_set, p.delta(t));
  return check_point(sys, witness_point(p, dir, x, support)).ok;
}

// Locally optimal arc per controlled position, by exact comparison of
// potential-transformed rewards; for White this maximizes r + log_b y(u),
// for Black it minimizes r - log_b y(u).
inline Strategy locally_optimal(const BwrGame& g, const GameParams& p, const SymbolicPoint& y,
                                Owner who) {
  Strategy s(g.size(), -1);
  for (int v = 0; v < g.size(); ++v) {
    if (g.owner(v) != who) continue;
    int best = -1;
    BSum best_score;
    for (int ai : g.out(v)) {
      const Arc& a = g.arc(ai);
      Rational r = a.reward * p.reward_scale;
      BSum score = who == Owner::White ? y[a.to].shifted(r) : y[a.to].shifted(-r);
      // White: maximize b^r y(u). Black: minimize b^r / y(u), i.e. maximize
      // b^{-r} y(u).
      if (best < 0 || (score - best_score).sign() > 0) {
        best = ai;
        best_score = score;
      }
    }
    s[v] = best;
  }
  return s;
}

// Vertices forced positive by y(w) > 0 under the system's rows: choosers
// (one-good-arc owners) follow their best-scoring arc, the other owners
// propagate along every arc. The result induces a well-defined subgame
// whose positions all carry the system's value guarantee.
inline std::set<int> forced_closure(const BwrGame& g, const GameParams& p, Direction dir,
                                    const SymbolicPoint& y, int w) {
  Owner chooser = dir == Direction::Lower ? Owner::White : Owner::Black;
  Strategy choice = locally_optimal(g, p, y, chooser);
  std::set<int> s;
  std::vector<int> stack = {w};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!s.insert(v).second) continue;
    if (g.owner(v) == chooser) {
      if (choice[v] >= 0) stack.push_back(g.arc(choice[v]).to);
    } else {
      for (int ai : g.out(v)) stack.push_back(g.arc(ai).to);
    }
  }
  return s;
}

}  // namespace detail

inline SolverContext make_solver(const BwrGame& game, SolverOptions opt = {}) {
  if (opt.mode == Mode::Paper && !opt.force &&
      (game.size() > 3 || game.random_count() > 1)) {
    throw GameError("paper mode is limited to n <= 3, k <= 1 (use force to override)");
  }
  SolverContext ctx;
  ctx.game = &game;
  ctx.opt = opt;
  DeriveOptions dopt;
  dopt.practical_exponent = opt.practical_exponent;
  ctx.params = derive_params(game, opt.mode, dopt);

  if (opt.mode == Mode::Practical && opt.hint_cap > 0) {
    ctx.hint = make_certificate(game, opt.hint_cap);
  }
  if (ctx.hint) {
    // The certified potential witnesses every feasibility claim the probes
    // rely on, so the box may shrink to its norm.
    Rational norm(0);
    for (const auto& xv : ctx.hint->x) norm = std::max(norm, Rational(abs(xv)));
    dopt.potential_bound = ceil_rat(norm * ctx.params.reward_scale) + 1;
    ctx.params = derive_params(game, opt.mode, dopt);
  }
  if (opt.mode == Mode::Practical) {
    // Exponent large enough that the feasibility blur 2/c is below the
    // minimal gap 1/den_bound^2 between candidate values.
    DeriveOptions sopt = dopt;
    long db = ctx.params.den_bound.get_si();
    sopt.practical_exponent = std::max(opt.practical_exponent, 16 * db * db + 1);
    ctx.sharp = derive_params(game, Mode::Practical, sopt);
  } else {
    ctx.sharp = ctx.params;
  }
  return ctx;
}

namespace detail {

struct ProbeAnswer {
  bool feasible = false;
  Rational blur;                 // certified one-sided error of a feasible answer
  std::vector<Rational> y;       // feasible point, scaled by b^{scale_exp}
  Rational scale_exp;
  GameParams params_used;
  bool from_witness = false;
};

inline ProbeAnswer run_probe(const SolverContext& ctx, const GameParams& p, Direction dir,
                             const Rational& t, const std::set<int>& bound_set) {
  FeasibilitySystem sys = build_system(*ctx.game, p, dir, t, bound_set, p.delta(t));
  DecisionConfig cfg;
  cfg.precision_bits = ctx.opt.precision_bits;
  cfg.trace = ctx.opt.trace;
  DecideResult r = decide(sys, cfg);
  if (r.status == DecideStatus::PrecisionExhausted) {
    throw PrecisionError("feasibility decision exhausted its precision budget at t = " +
                         to_string(t));
  }
  ProbeAnswer a;
  a.feasible = r.status == DecideStatus::Feasible;
  a.blur = p.eps_eff_upper;
  a.y = std::move(r.y);
  a.scale_exp = r.scale_exp;
  a.params_used = p;
  return a;
}

}  // namespace detail

// Extreme value of the game: t_max via the Upper system, t_min via the
// Lower system, searched over the grid of rationals with denominator at
// most ceil(Lambda). Returned in original (unscaled) reward units.
inline Rational find_extreme_value(const SolverContext& ctx, Extreme which) {
  const BwrGame& g = *ctx.game;
  const GameParams& p0 = ctx.params;
  long maxden = p0.den_bound.get_si();
  std::vector<Rational> cands = detail::value_candidates(p0.U, maxden);
  if (cands.empty() || cands.front() != 0) cands.insert(cands.begin(), Rational(0));

  Direction dir = which == Extreme::Max ? Direction::Upper : Direction::Lower;
  std::set<int> all = detail::all_vertices(g.size());

  size_t ilo = 0, ihi = cands.size() - 1;

  // With a certificate the expected value is known; probing its two
  // neighboring gaps first collapses the search in two steps.
  std::vector<size_t> seeds;
  if (ctx.hint) {
    Rational expect = (which == Extreme::Max ? ctx.hint->top_value : ctx.hint->bottom_value) *
                      p0.reward_scale;
    auto it = std::lower_bound(cands.begin(), cands.end(), expect);
    if (it != cands.end() && *it == expect) {
      size_t i = static_cast<size_t>(it - cands.begin());
      if (i < cands.size() - 1) seeds.push_back(i);
      if (i > 0) seeds.push_back(i - 1);
    }
  }

  while (ilo < ihi) {
    size_t j = (ilo + ihi) / 2;
    while (!seeds.empty()) {
      size_t s = seeds.back();
      seeds.pop_back();
      if (s >= ilo && s < ihi) {
        j = s;
        break;
      }
    }
    Rational t = (cands[j] + cands[j + 1]) / 2;

    // Exact witness checks at the sharp base resolve both branches: either
    // the all-vertex witness at t itself, or a class-supported witness at
    // the adjacent candidate certifying that the extreme lies beyond t. Both
    // are decisive because the blur is below the candidate gap.
    if (ctx.hint && ctx.opt.mode == Mode::Practical) {
      Rational cls = which == Extreme::Max ? ctx.hint->top_value : ctx.hint->bottom_value;
      Rational cls_s = cls * p0.reward_scale;
      Rational blur = detail::witness_blur(ctx.sharp);
      bool resolved = false;
      std::set<int> sup;
      for (int v = 0; v < g.size(); ++v) {
        if (ctx.hint->mu[v] == cls) sup.insert(v);
      }
      if (which == Extreme::Max) {
        if (blur < cands[j + 1] - t) {
          if (cls_s <= t) {
            if (detail::witness_feasible(g, ctx.sharp, dir, t, all, ctx.hint->x, all)) {
              ihi = j;  // value <= t + blur < next candidate
              resolved = true;
            }
          } else if (detail::witness_feasible(g, ctx.sharp, Direction::Lower, cands[j + 1],
                                              sup, ctx.hint->x, sup)) {
            ilo = j + 1;  // t_max >= cands[j+1] - blur > t
            resolved = true;
          }
        }
      } else {
        if (blur < t - cands[j]) {
          if (cls_s >= t) {
            if (detail::witness_feasible(g, ctx.sharp, dir, t, all, ctx.hint->x, all)) {
              ilo = j + 1;  // value >= t - blur > previous candidate
              resolved = true;
            }
          } else if (detail::witness_feasible(g, ctx.sharp, Direction::Upper, cands[j], sup,
                                              ctx.hint->x, sup)) {
            ihi = j;  // t_min <= cands[j] + blur < cands[j+1]
            resolved = true;
          }
        }
      }
      if (resolved) continue;
    }

    GameParams p = ctx.params;
    for (;;) {
      detail::ProbeAnswer a = detail::run_probe(ctx, p, dir, t, all);
      if (which == Extreme::Max) {
        if (!a.feasible) {
          ilo = j + 1;  // exact: value > t
          break;
        }
        // value <= t + blur: drop candidates above that bound.
        auto it = std::upper_bound(cands.begin(), cands.end(), t + a.blur);
        size_t new_ihi = static_cast<size_t>(it - cands.begin()) - 1;
        if (new_ihi < ihi) {
          ihi = std::max(new_ihi, ilo);
          break;
        }
      } else {
        if (!a.feasible) {
          ihi = j;  // exact: value < t
          break;
        }
        // value >= t - blur: drop candidates below that bound.
        auto it = std::lower_bound(cands.begin(), cands.end(), t - a.blur);
        size_t new_ilo = static_cast<size_t>(it - cands.begin());
        if (new_ilo > ilo) {
          ilo = std::min(new_ilo, ihi);
          break;
        }
      }
      p = detail::escalate_base(p);  // halve the blur and retry
    }
  }

  // Conformance rounding over the certified bracket around the survivor.
  Rational t_star = cands[ilo];
  Rational gap_lo = ilo > 0 ? (t_star - cands[ilo - 1]) / 2 : Rational(0);
  Rational gap_hi = ilo + 1 < cands.size() ? (cands[ilo + 1] - t_star) / 2 : Rational(0);
  Rational rounded = round_to_rational(t_star - gap_lo, t_star + gap_hi, p0.den_bound);
  return rounded / p0.reward_scale;
}

struct Membership {
  bool member = false;
  std::set<int> vplus;  // every vertex certified in-class by the same point
};

// Does w belong to the top class (Lower system at t_max) or bottom class
// (Upper system at t_min)? t is in original reward units.
inline Membership membership_in_class(const SolverContext& ctx, int w, const Rational& t,
                                      ClassSide side) {
  const BwrGame& g = *ctx.game;
  if (w < 0 || w >= g.size()) throw GameError("membership vertex out of range");
  Rational t_s = t * ctx.params.reward_scale;
  Direction dir = side == ClassSide::Top ? Direction::Lower : Direction::Upper;
  std::set<int> bound = {w};

  if (ctx.hint && ctx.opt.mode == Mode::Practical) {
    const Rational& cls = side == ClassSide::Top ? ctx.hint->top_value : ctx.hint->bottom_value;
    std::set<int> support;
    for (int v = 0; v < g.size(); ++v) {
      if (ctx.hint->mu[v] == cls) support.insert(v);
    }
    if (support.count(w) &&
        detail::witness_feasible(g, ctx.sharp, dir, t_s, bound, ctx.hint->x, support)) {
      return {true, support};
    }
    // The certificate pins every value exactly (the canonical form was
    // checked with zero tolerance), so a differing value excludes w.
    if (ctx.hint->mu[w] != t) return {};
  }

  // An infeasible probe is exact at any base and slack.
  detail::ProbeAnswer a = detail::run_probe(ctx, ctx.params, dir, t_s, bound);
  if (!a.feasible) return {};

  // A feasible probe is conclusive only with the slack tightened enough to
  // keep zero-propagation intact along value chains (so the positive support
  // closes into a well-defined subgame) and the blur below the candidate
  // gap; rerun at the sharp base with the shrunken slack.
  GameParams sp = ctx.sharp;
  Rational grid_gap = Rational(1) / Rational(ctx.params.den_bound * ctx.params.den_bound);
  while (detail::witness_blur(sp) >= grid_gap) sp = detail::escalate_base(sp);
  FeasibilitySystem sys = build_system(
      g, sp, dir, t_s, bound,
      sp.delta(t_s).shifted(-Rational(g.size()) * (sp.U + Rational(1))));
  DecisionConfig cfg;
  cfg.precision_bits = ctx.opt.precision_bits;
  cfg.trace = ctx.opt.trace;
  DecideResult r = decide(sys, cfg);
  if (r.status == DecideStatus::PrecisionExhausted) {
    throw PrecisionError("membership decision exhausted its precision budget at t = " +
                         to_string(t));
  }
  if (r.status == DecideStatus::Infeasible) return {};
  Membership m;
  m.member = true;
  SymbolicPoint ys = symbolic_point(sp, r.y, r.scale_exp);
  m.vplus = detail::forced_closure(g, sp, dir, ys, w);
  for (int v : m.vplus) {
    if (r.y[v] <= 0) {
      throw InconsistencyError("membership support closure reached a zero coordinate");
    }
  }
  return m;
}

namespace detail {

// Structural class conditions restricted to one side; the other set is
// passed empty, which leaves its conditions vacuous.
inline void verify_class(const BwrGame& g, const std::set<int>& cls, ClassSide side) {
  ClassPropertyReport rep = side == ClassSide::Top ? check_class_properties(g, cls, {})
                                                   : check_class_properties(g, {}, cls);
  const std::vector<int> items = side == ClassSide::Top ? std::vector<int>{1, 2, 4, 6}
                                                        : std::vector<int>{0, 3, 5, 7};
  for (int i : items) {
    if (!rep.item[i].ok) {
      throw InconsistencyError("computed class violates structural condition (" +
                               std::to_string(i + 1) + ") at " + rep.item[i].witness);
    }
  }
}

}  // namespace detail

inline std::set<int> compute_class(const SolverContext& ctx, ClassSide side,
                                   const Rational& t) {
  const BwrGame& g = *ctx.game;
  std::set<int> cls;
  for (int w = 0; w < g.size(); ++w) {
    if (cls.count(w)) continue;
    Membership m = membership_in_class(ctx, w, t, side);
    if (m.member) {
      cls.insert(w);
      cls.insert(m.vplus.begin(), m.vplus.end());
    }
  }
  if (cls.empty()) throw InconsistencyError("computed class is empty");
  detail::verify_class(g, cls, side);
  return cls;
}

inline std::set<int> compute_class(const SolverContext& ctx, ClassSide side) {
  return compute_class(
      ctx, side, find_extreme_value(ctx, side == ClassSide::Top ? Extreme::Max : Extreme::Min));
}

struct StrategyChoice {
  std::string from, to;
};

struct StrategyPair {
  Strategy max_strategy, min_strategy;  // arc indices in the induced subgame
  std::vector<StrategyChoice> max_choices, min_choices;
};

// Optimal strategies on the induced (ergodic) game G[S] with value t, from
// approximate solutions of the Lower and Upper systems at t.
inline StrategyPair extract_strategies(const BwrGame& game, const std::set<int>& S,
                                       const Rational& t, SolverOptions opt = {}) {
  BwrGame gs = induced_subgame(game, S);
  SolverContext sub = make_solver(gs, opt);
  std::set<int> all = detail::all_vertices(gs.size());

  GameParams p = sub.params;
  for (int attempt = 0;; ++attempt) {
    Rational t_s = t * p.reward_scale;
    SymbolicPoint y1, y2;
    bool have = false;
    if (sub.hint && opt.mode == Mode::Practical &&
        detail::witness_feasible(gs, sub.sharp, Direction::Lower, t_s, all, sub.hint->x, all) &&
        detail::witness_feasible(gs, sub.sharp, Direction::Upper, t_s, all, sub.hint->x, all)) {
      y1 = detail::witness_point(sub.sharp, Direction::Lower, sub.hint->x, all);
      y2 = detail::witness_point(sub.sharp, Direction::Upper, sub.hint->x, all);
      p = sub.sharp;
      have = true;
    }
    if (!have) {
      detail::ProbeAnswer a1 = detail::run_probe(sub, p, Direction::Lower, t_s, all);
      detail::ProbeAnswer a2 = detail::run_probe(sub, p, Direction::Upper, t_s, all);
      if (!a1.feasible || !a2.feasible) {
        throw InconsistencyError("strategy systems infeasible at the claimed value " +
                                 to_string(t));
      }
      y1 = symbolic_point(p, a1.y, a1.scale_exp);
      y2 = symbolic_point(p, a2.y, a2.scale_exp);
    }

    StrategyPair sp;
    sp.max_strategy = detail::locally_optimal(gs, p, y1, Owner::White);
    sp.min_strategy = detail::locally_optimal(gs, p, y2, Owner::Black);

    // Certification: against each extracted strategy the opponent's exact
    // best response must still yield the claimed value everywhere.
    bool ok = true;
    try {
      BestResponse vs_max = best_response(gs, sp.max_strategy, Player::Min);
      BestResponse vs_min = best_response(gs, sp.min_strategy, Player::Max);
      for (int v = 0; v < gs.size() && ok; ++v) {
        ok = vs_max.values[v] == t && vs_min.values[v] == t;
      }
    } catch (const OracleError&) {
      ok = true;  // beyond the enumeration cap: accept the systems' answer
    }
    if (ok) {
      for (int v = 0; v < gs.size(); ++v) {
        if (sp.max_strategy[v] >= 0) {
          const Arc& a = gs.arc(sp.max_strategy[v]);
          sp.max_choices.push_back({gs.id_of(a.from), gs.id_of(a.to)});
        }
        if (sp.min_strategy[v] >= 0) {
          const Arc& a = gs.arc(sp.min_strategy[v]);
          sp.min_choices.push_back({gs.id_of(a.from), gs.id_of(a.to)});
        }
      }
      return sp;
    }
    if (opt.mode == Mode::Paper || attempt >= 3) {
      throw InconsistencyError("extracted strategies failed best-response certification");
    }
    p = detail::escalate_base(p);  // retry with a larger base exponent
  }
}

inline GameSolution solve_ergodic(const SolverContext& ctx) {
  const BwrGame& g = *ctx.game;
  Rational t_max = find_extreme_value(ctx, Extreme::Max);
  std::set<int> top = compute_class(ctx, ClassSide::Top, t_max);
  if (static_cast<int>(top.size()) != g.size()) {
    std::string ids;
    for (int v : top) ids += (ids.empty() ? "" : ", ") + g.id_of(v);
    throw NotErgodicError("game is not ergodic; top class is {" + ids + "}", top);
  }
  StrategyPair sp = extract_strategies(g, top, t_max, ctx.opt);
  GameSolution sol;
  sol.values.assign(g.size(), t_max);
  sol.max_strategy = std::move(sp.max_strategy);
  sol.min_strategy = std::move(sp.min_strategy);
  sol.certified = true;
  return sol;
}

struct ClassificationResult {
  Rational t_max, t_min;
  std::set<int> top, bottom;
  StrategyPair strategies_top, strategies_bottom;
};

inline ClassificationResult classify(const SolverContext& ctx) {
  const BwrGame& g = *ctx.game;
  ClassificationResult res;
  res.t_max = find_extreme_value(ctx, Extreme::Max);
  res.t_min = find_extreme_value(ctx, Extreme::Min);
  if (res.t_min > res.t_max) {
    throw InconsistencyError("t_min " + to_string(res.t_min) + " exceeds t_max " +
                             to_string(res.t_max));
  }
  res.top = compute_class(ctx, ClassSide::Top, res.t_max);
  res.bottom = compute_class(ctx, ClassSide::Bottom, res.t_min);
  if (res.t_max == res.t_min &&
      (static_cast<int>(res.top.size()) != g.size() ||
       static_cast<int>(res.bottom.size()) != g.size())) {
    throw InconsistencyError("equal extreme values but classes do not cover the game");
  }
  ClassPropertyReport rep = check_class_properties(g, res.top, res.bottom);
  if (!rep.all_ok()) {
    for (const auto& it : rep.item) {
      if (!it.ok) {
        throw InconsistencyError("class structure violated at " + it.witness);
      }
    }
  }
  res.strategies_top = extract_strategies(g, res.top, res.t_max, ctx.opt);
  res.strategies_bottom = extract_strategies(g, res.bottom, res.t_min, ctx.opt);
  return res;
}

// Mode-only conveniences.
inline Rational find_extreme_value(const BwrGame& g, Extreme which, Mode mode) {
  SolverOptions opt;
  opt.mode = mode;
  SolverContext ctx = make_solver(g, opt);
  return find_extreme_value(ctx, which);
}

inline ClassificationResult classify(const BwrGame& g, Mode mode) {
  SolverOptions opt;
  opt.mode = mode;
  SolverContext ctx = make_solver(g, opt);
  return classify(ctx);
}

inline GameSolution solve_ergodic(const BwrGame& g, Mode mode) {
  SolverOptions opt;
  opt.mode = mode;
  SolverContext ctx = make_solver(g, opt);
  return solve_ergodic(ctx);
}

}  // namespace bwr

#endif  // BWR_SOLVER_HPP_
