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

// The two slack-relaxed convex systems deciding whether potentials x with
// M[r_x] >= t (Lower, via y = b^-x) or M[r_x] <= t (Upper, via y = b^x)
// exist, plus the semi-weak separation oracle over them.

#ifndef BWR_FEASIBILITY_HPP_
#define BWR_FEASIBILITY_HPP_

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bwr/bnumber.hpp"
#include "bwr/game.hpp"
#include "bwr/params.hpp"
#include "bwr/rational.hpp"

namespace bwr {

enum class Direction { Lower, Upper };

// One constraint row. All coefficients are single powers of b, kept as
// exponents. The generic shape is
//   Linear:    sum_u b^{lhs.exp} y(u)  >=  b^{rhs_exp} y(vertex) - delta
//   GeomMean:  b^{a_exp} prod_u y(u)^{w(u)}  >=  b^{rhs_exp} y(vertex) - delta
//   NonNeg:    y(vertex) >= 0
//   BoxUpper:  y(vertex) <= b^L + delta
//   BoxLower:  b^L y(vertex) >= 1
struct Constraint {
  enum class Kind { NonNeg, BoxUpper, BoxLower, Linear, GeomMean };
  Kind kind;
  int vertex = -1;
  std::vector<std::pair<int, Rational>> lhs;      // Linear: (u, exponent)
  std::vector<std::pair<int, Rational>> weights;  // GeomMean: (u, p(v,u))
  Rational a_exp;                                 // GeomMean scale A = b^{a_exp}
  Rational rhs_exp;                               // B = b^{rhs_exp}
  unsigned long power = 1;  // GeomMean: common denominator of the weights
};

struct FeasibilitySystem {
  Direction direction;
  Rational t;
  BSum delta;
  GameParams params;
  std::set<int> bound_set;
  int n = 0;
  std::vector<Constraint> constraints;
};

// Point with per-coordinate symbolic values; covers exact rationals,
// uniformly scaled dyadic points and potential-derived powers of b alike.
using SymbolicPoint = std::vector<BSum>;

inline SymbolicPoint symbolic_point(const GameParams& p, const std::vector<Rational>& y,
                                    const Rational& scale_exp = Rational(0)) {
  SymbolicPoint s;
  s.reserve(y.size());
  for (const auto& q : y) s.push_back(BSum::b_pow(p.base, scale_exp, q));
  return s;
}

// The Lower system encodes M[r_x] >= t for y = b^-x; the Upper system
// encodes M[r_x] <= t for y = b^x (rewards and t negated in exponents).
// t lives in the scaled reward space: 0 <= t <= params.U.
inline FeasibilitySystem build_system(const BwrGame& game, const GameParams& params,
                                      Direction dir, const Rational& t,
                                      const std::set<int>& bound_set, const BSum& delta) {
  if (t < 0 || t > params.U) {
    throw GameError("threshold t = " + to_string(t) + " out of range [0, " +
                    to_string(params.U) + "]");
  }
  FeasibilitySystem sys;
  sys.direction = dir;
  sys.t = t;
  sys.delta = delta;
  sys.params = params;
  sys.bound_set = bound_set;
  sys.n = game.size();

  Rational sgn = dir == Direction::Lower ? 1 : -1;
  for (int v = 0; v < sys.n; ++v) {
    Constraint c;
    c.kind = Constraint::Kind::NonNeg;
    c.vertex = v;
    sys.constraints.push_back(c);
  }
  for (int v = 0; v < sys.n; ++v) {
    Constraint c;
    c.kind = Constraint::Kind::BoxUpper;
    c.vertex = v;
    sys.constraints.push_back(c);
  }
  for (int v : bound_set) {
    if (v < 0 || v >= sys.n) throw GameError("bound set vertex out of range");
    Constraint c;
    c.kind = Constraint::Kind::BoxLower;
    c.vertex = v;
    sys.constraints.push_back(c);
  }

  // In the Lower direction White's softmax becomes a sum constraint and
  // Black's softmin one per-arc constraint; the Upper direction swaps them.
  Owner sum_owner = dir == Direction::Lower ? Owner::White : Owner::Black;
  for (int v = 0; v < sys.n; ++v) {
    Owner o = game.owner(v);
    if (o == Owner::Random) {
      Constraint c;
      c.kind = Constraint::Kind::GeomMean;
      c.vertex = v;
      c.rhs_exp = sgn * t;
      Integer den = 1;
      for (int ai : game.out(v)) {
        const Arc& a = game.arc(ai);
        c.weights.emplace_back(a.to, a.prob);
        c.a_exp += sgn * a.prob * a.reward * params.reward_scale;
        den = lcm(den, denominator(a.prob));
      }
      c.power = den.get_ui();
      sys.constraints.push_back(c);
    } else if (o == sum_owner) {
      Constraint c;
      c.kind = Constraint::Kind::Linear;
      c.vertex = v;
      c.rhs_exp = sgn * t;
      for (int ai : game.out(v)) {
        const Arc& a = game.arc(ai);
        c.lhs.emplace_back(a.to, sgn * a.reward * params.reward_scale);
      }
      sys.constraints.push_back(c);
    } else {
      for (int ai : game.out(v)) {
        const Arc& a = game.arc(ai);
        Constraint c;
        c.kind = Constraint::Kind::Linear;
        c.vertex = v;
        c.rhs_exp = sgn * t;
        c.lhs.emplace_back(a.to, sgn * a.reward * params.reward_scale);
        sys.constraints.push_back(c);
      }
    }
  }
  return sys;
}

struct CheckReport {
  bool ok = true;
  std::vector<bool> satisfied;
  int first_violated = -1;
};

namespace detail {

// Exact decision of one constraint at a symbolic point. delta_shift scales
// delta by b^{delta_shift}; used when the point lives in scaled coordinates.
inline bool constraint_holds(const FeasibilitySystem& sys, const Constraint& c,
                             const SymbolicPoint& y) {
  const SoftmaxBase& base = sys.params.base;
  Rational L(sys.params.L);
  switch (c.kind) {
    case Constraint::Kind::NonNeg:
      return y[c.vertex].sign() >= 0;
    case Constraint::Kind::BoxUpper: {
      BSum slack = BSum::b_pow(base, L) + sys.delta - y[c.vertex];
      return slack.sign() >= 0;
    }
    case Constraint::Kind::BoxLower: {
      BSum slack = y[c.vertex].shifted(L) - BSum::constant(base, Rational(1));
      return slack.sign() >= 0;
    }
    case Constraint::Kind::Linear: {
      BSum val(base);
      for (const auto& [u, e] : c.lhs) val += y[u].shifted(e);
      val -= y[c.vertex].shifted(c.rhs_exp);
      val += sys.delta;
      return val.sign() >= 0;
    }
    case Constraint::Kind::GeomMean: {
      BSum rhs = y[c.vertex].shifted(c.rhs_exp) - sys.delta;
      if (rhs.sign() <= 0) return true;
      // Raise both sides to the common weight denominator; the left side
      // then only needs integer powers of the coordinates.
      BSum lhs = BSum::constant(base, Rational(1));
      for (const auto& [u, p] : c.weights) {
        Rational w = p * Rational(static_cast<long>(c.power));
        lhs = lhs * y[u].pow(numerator(w).get_ui());
      }
      lhs = lhs.shifted(c.a_exp * Rational(static_cast<long>(c.power)));
      return compare(lhs, rhs.pow(c.power)) >= 0;
    }
  }
  return false;
}

// Certified rational approximation within eta (eta > 0).
inline Rational approx_rational(const BSum& v, const Rational& eta) {
  if (auto q = v.exact_value()) return *q;
  for (mpfr_prec_t p = 256;; p *= 2) {
    IReal iv = v.eval(p);
    if (!iv.lo.is_finite() || !iv.hi.is_finite()) continue;
    Rational lo = iv.lo.to_rational(), hi = iv.hi.to_rational();
    if (hi - lo <= eta) return (lo + hi) / 2;
  }
}

// Certified rational upper bound.
inline Rational upper_rational(const BSum& v) {
  if (auto q = v.exact_value()) return *q;
  for (mpfr_prec_t p = 256;; p *= 2) {
    IReal iv = v.eval(p);
    if (iv.hi.is_finite()) return iv.hi.to_rational();
  }
}

}  // namespace detail

// Exact per-constraint evaluation of the relaxed system at a point.
inline CheckReport check_point(const FeasibilitySystem& sys, const SymbolicPoint& y) {
  if (static_cast<int>(y.size()) != sys.n) throw GameError("point dimension mismatch");
  CheckReport rep;
  rep.satisfied.resize(sys.constraints.size());
  for (size_t i = 0; i < sys.constraints.size(); ++i) {
    rep.satisfied[i] = detail::constraint_holds(sys, sys.constraints[i], y);
    if (!rep.satisfied[i] && rep.ok) {
      rep.ok = false;
      rep.first_violated = static_cast<int>(i);
    }
  }
  return rep;
}

// ghat >= prod values^exponents >= ghat - tol, by integer root extraction
// with upward rounding. Exponents must be non-negative and sum to 1.
inline Rational rational_root_approx(const std::vector<Rational>& values,
                                     const std::vector<Rational>& exponents,
                                     const Rational& tol) {
  if (tol <= 0) throw std::invalid_argument("rational_root_approx: tolerance must be positive");
  Integer den = 1;
  for (const auto& e : exponents) den = lcm(den, denominator(e));
  unsigned long d = den.get_ui();
  Rational q = 1;  // (prod values^exponents)^d, exactly rational
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) throw std::invalid_argument("rational_root_approx: values must be positive");
    Rational w = exponents[i] * Rational(den);
    q *= pow_rat(values[i], numerator(w).get_si());
  }
  // Units of 1/M with 2/M <= tol; root of ceil(q*M^d) overshoots by < 2/M.
  Integer m = ceil_rat(Rational(2) / tol);
  Rational scaled = q * Rational(pow_int(m, d));
  Integer target = ceil_rat(scaled);
  Integer root;
  int exact = mpz_root(root.get_mpz_t(), target.get_mpz_t(), d);
  if (!exact || Rational(target) != scaled) root += 1;
  return Rational(root) / Rational(m);
}

struct SeparationResult {
  bool inside = true;
  std::vector<Rational> c;  // guarantees c.y + delta' >= c.ybar on the system
  int constraint_index = -1;
};

// Semi-weak separation at a rational query point. The point is interpreted
// as y(v) = b^{scale_exp} * ybar(v); the returned hyperplane is valid in the
// given (scaled) coordinates. Linear and box rows separate exactly (up to a
// delta'-budgeted rationalization of irrational coefficients); violated
// geometric-mean rows return the concavity gradient cut.
inline SeparationResult separate(const FeasibilitySystem& sys, const std::vector<Rational>& ybar,
                                 const Rational& delta_prime,
                                 const Rational& scale_exp = Rational(0)) {
  if (static_cast<int>(ybar.size()) != sys.n) throw GameError("point dimension mismatch");
  if (delta_prime <= 0) throw GameError("separation slack must be positive");
  const SoftmaxBase& base = sys.params.base;
  Rational L(sys.params.L);
  const Rational s = scale_exp;
  // delta in scaled coordinates.
  BSum delta_s = sys.delta.shifted(-s);

  auto result = [&](std::vector<Rational> c, size_t idx) {
    SeparationResult r;
    r.inside = false;
    r.c = std::move(c);
    r.constraint_index = static_cast<int>(idx);
    return r;
  };
  auto unit = [&](int v, int sgn) {
    std::vector<Rational> c(sys.n, Rational(0));
    c[v] = sgn;
    return c;
  };

  // Per-coordinate rationalization budget: any feasible y' and the query
  // both lie below the scaled box bound, so a coefficient error of eta per
  // coordinate perturbs c.(y - ybar) by at most delta'.
  Rational eta;
  {
    Rational ymax = detail::upper_rational(BSum::b_pow(base, L - s) + delta_s);
    if (ymax < 0) ymax = 0;
    Rational ybig = 0;
    for (const auto& q : ybar) {
      Rational a = q < 0 ? -q : q;
      if (a > ybig) ybig = a;
    }
    eta = delta_prime / (2 * Rational(sys.n) * (ymax + ybig + 1));
  }

  for (size_t i = 0; i < sys.constraints.size(); ++i) {
    const Constraint& c = sys.constraints[i];
    switch (c.kind) {
      case Constraint::Kind::NonNeg:
        if (ybar[c.vertex] < 0) return result(unit(c.vertex, 1), i);
        break;
      case Constraint::Kind::BoxUpper: {
        BSum slack =
            BSum::b_pow(base, L - s) + delta_s - BSum::constant(base, ybar[c.vertex]);
        if (slack.sign() < 0) return result(unit(c.vertex, -1), i);
        break;
      }
      case Constraint::Kind::BoxLower: {
        BSum slack = BSum::constant(base, ybar[c.vertex]) - BSum::b_pow(base, -L - s);
        if (slack.sign() < 0) return result(unit(c.vertex, 1), i);
        break;
      }
      case Constraint::Kind::Linear: {
        BSum val(base);
        for (const auto& [u, e] : c.lhs) val += BSum::b_pow(base, e, ybar[u]);
        val -= BSum::b_pow(base, c.rhs_exp, ybar[c.vertex]);
        val += delta_s;
        if (val.sign() < 0) {
          std::vector<Rational> row(sys.n, Rational(0));
          for (const auto& [u, e] : c.lhs) {
            row[u] += detail::approx_rational(BSum::b_pow(base, e), eta / 2);
          }
          row[c.vertex] -= detail::approx_rational(BSum::b_pow(base, c.rhs_exp), eta / 2);
          return result(std::move(row), i);
        }
        break;
      }
      case Constraint::Kind::GeomMean: {
        BSum rhs = BSum::b_pow(base, c.rhs_exp, ybar[c.vertex]) - delta_s;
        if (rhs.sign() <= 0) break;
        int zero_u = -1;
        BSum lhs = BSum::constant(base, Rational(1));
        for (const auto& [u, p] : c.weights) {
          if (ybar[u] <= 0 && zero_u < 0) zero_u = u;
          Rational w = p * Rational(static_cast<long>(c.power));
          lhs = lhs * BSum::constant(base, ybar[u]).pow(numerator(w).get_ui());
        }
        if (zero_u >= 0) {
          // g vanishes (or is undefined) on the boundary while the right
          // side is positive: raise the offending coordinate.
          return result(unit(zero_u, 1), i);
        }
        lhs = lhs.shifted(c.a_exp * Rational(static_cast<long>(c.power)));
        if (compare(lhs, rhs.pow(c.power)) >= 0) break;

        // Gradient cut c_u = A * g(ybar) * p(v,u)/ybar(u), c_v = -B, with
        // g over-approximated per the separation argument and every
        // b-power rationalized within the eta budget.
        // Overshooting g by at most delta'/(2A) costs at most delta'/2 in
        // the guarantee (the overshoot enters scaled by A and the weights).
        Rational a_up = detail::upper_rational(BSum::b_pow(base, c.a_exp));
        std::vector<Rational> vals, exps;
        for (const auto& [u, p] : c.weights) {
          vals.push_back(ybar[u]);
          exps.push_back(p);
        }
        Rational tol_g = delta_prime / (2 * a_up);
        Rational ghat = rational_root_approx(vals, exps, tol_g);
        std::vector<Rational> row(sys.n, Rational(0));
        for (const auto& [u, p] : c.weights) {
          row[u] += detail::approx_rational(BSum::b_pow(base, c.a_exp, p * ghat / ybar[u]),
                                            eta / 2);
        }
        row[c.vertex] -= detail::approx_rational(BSum::b_pow(base, c.rhs_exp), eta / 2);
        return result(std::move(row), i);
      }
    }
  }
  return {};
}

inline const char* constraint_kind_name(Constraint::Kind k) {
  switch (k) {
    case Constraint::Kind::NonNeg: return "nonneg";
    case Constraint::Kind::BoxUpper: return "box_upper";
    case Constraint::Kind::BoxLower: return "box_lower";
    case Constraint::Kind::Linear: return "linear";
    case Constraint::Kind::GeomMean: return "geom_mean";
  }
  return "?";
}

inline nlohmann::json system_to_json(const FeasibilitySystem& sys) {
  nlohmann::json j;
  j["direction"] = sys.direction == Direction::Lower ? "lower" : "upper";
  j["t"] = to_string(sys.t);
  j["delta"] = sys.delta.str();
  j["base"] = sys.params.base.str();
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : sys.constraints) {
    nlohmann::json jc;
    jc["kind"] = constraint_kind_name(c.kind);
    jc["vertex"] = c.vertex;
    if (c.kind == Constraint::Kind::Linear) {
      jc["rhs_exp"] = to_string(c.rhs_exp);
      for (const auto& [u, e] : c.lhs) jc["lhs"].push_back({{"u", u}, {"exp", to_string(e)}});
    } else if (c.kind == Constraint::Kind::GeomMean) {
      jc["rhs_exp"] = to_string(c.rhs_exp);
      jc["a_exp"] = to_string(c.a_exp);
      jc["power"] = c.power;
      for (const auto& [u, p] : c.weights) {
        jc["weights"].push_back({{"u", u}, {"p", to_string(p)}});
      }
    }
    j["constraints"].push_back(std::move(jc));
  }
  return j;
}

}  // namespace bwr

#endif  // BWR_FEASIBILITY_HPP_
