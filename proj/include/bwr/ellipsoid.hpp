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

// Central-cut ellipsoid method deciding feasibility of a relaxed system.
// Coordinates are scaled by b^-L so the box becomes [0, 1 + delta*b^-L];
// infeasibility is certified by driving the volume below the margin box
// that any unrelaxed-feasible point would carry into the relaxed system.

#ifndef BWR_ELLIPSOID_HPP_
#define BWR_ELLIPSOID_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "bwr/feasibility.hpp"
#include "bwr/real.hpp"

namespace bwr {

struct EllipsoidState {
  std::vector<Real> center;
  std::vector<std::vector<Real>> shape;  // P, symmetric positive definite
  long iteration = 0;
  mpfr_prec_t precision_bits = 256;
};

inline EllipsoidState make_ball(int n, const Rational& center_coord, const Rational& radius,
                                mpfr_prec_t prec) {
  EllipsoidState st;
  st.precision_bits = prec;
  st.center.assign(n, Real::of(center_coord, prec));
  st.shape.assign(n, std::vector<Real>(n, Real(prec)));
  Real r2 = Real::mul(Real::of(radius, prec), Real::of(radius, prec), prec, MPFR_RNDN);
  for (int i = 0; i < n; ++i) st.shape[i][i] = r2;
  return st;
}

// Exact per-step volume shrink exponent (plus the tiny deliberate shape
// inflation that restores containment under rounding).
inline double ellipsoid_log_rate(int n) {
  double r = std::log(static_cast<double>(n) / (n + 1));
  if (n > 1) {
    r += (n - 1) * 0.5 *
         std::log(static_cast<double>(n) * n / (static_cast<double>(n) * n - 1));
  }
  return r + 1e-12 + n * 1e-15;
}

// Replace the ellipsoid by the minimal one containing the half-ellipsoid
// {y : cut . y >= cut . center}. Returns false when positive definiteness
// is lost at the working precision.
inline bool ellipsoid_step(EllipsoidState& st, const std::vector<Rational>& cut) {
  int n = static_cast<int>(st.center.size());
  mpfr_prec_t prec = st.precision_bits;
  auto mul = [&](const Real& a, const Real& b) { return Real::mul(a, b, prec, MPFR_RNDN); };
  auto div = [&](const Real& a, const Real& b) { return Real::div(a, b, prec, MPFR_RNDN); };
  auto add = [&](const Real& a, const Real& b) { return Real::add(a, b, prec, MPFR_RNDN); };
  auto sub = [&](const Real& a, const Real& b) { return Real::sub(a, b, prec, MPFR_RNDN); };

  std::vector<Real> a;
  a.reserve(n);
  bool all_zero = true;
  for (const auto& q : cut) {
    a.push_back(Real::of(q, prec));
    all_zero &= q == 0;
  }
  if (all_zero || static_cast<int>(cut.size()) != n) return false;

  std::vector<Real> pa(n, Real(prec));
  for (int i = 0; i < n; ++i) {
    Real s(prec);
    for (int j = 0; j < n; ++j) s = add(s, mul(st.shape[i][j], a[j]));
    pa[i] = s;
  }
  Real den(prec);
  for (int i = 0; i < n; ++i) den = add(den, mul(a[i], pa[i]));
  if (!den.is_finite() || den.sign() <= 0) return false;
  Real root = Real::sqrt(den, prec, MPFR_RNDN);

  Real np1 = Real::of(static_cast<long>(n) + 1, prec);
  for (int i = 0; i < n; ++i) {
    st.center[i] = add(st.center[i], div(pa[i], mul(np1, root)));
  }

  // Inflation factor keeping the rounded ellipsoid a superset of the ideal
  // update; accounted for in ellipsoid_log_rate.
  Real inflate = add(Real::of(1L, prec), Real::exp2(Real::of(-60L, prec), prec, MPFR_RNDN));
  if (n == 1) {
    st.shape[0][0] = mul(st.shape[0][0], mul(Real::of(Rational(1, 4), prec), inflate));
  } else {
    Real f1 = div(Real::of(static_cast<long>(n) * n, prec),
                  Real::of(static_cast<long>(n) * n - 1, prec));
    Real f2 = div(Real::of(2L, prec), np1);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Real upd = sub(st.shape[i][j], mul(f2, div(mul(pa[i], pa[j]), den)));
        upd = mul(mul(f1, upd), inflate);
        st.shape[i][j] = upd;
        st.shape[j][i] = upd;
      }
    }
  }
  ++st.iteration;
  return true;
}

enum class DecideStatus { Feasible, Infeasible, PrecisionExhausted };

struct DecisionConfig {
  double constant_factor = 4.0;        // safety multiple on the iteration bound
  mpfr_prec_t precision_bits = 0;      // 0 = derived from the system
  std::optional<Rational> delta_prime; // separation slack; derived by default
  long max_iterations_override = 0;
  std::ostream* trace = nullptr;       // JSON lines per iteration
};

struct DecideResult {
  DecideStatus status = DecideStatus::PrecisionExhausted;
  std::vector<Rational> y;   // Feasible: the point, as y(v) = b^{scale_exp} * y[v]
  Rational scale_exp;
  long iterations = 0;
  long max_iterations = 0;
  double log_volume = 0;     // certified upper bound on ln vol(E_m)
  double log_volume_threshold = 0;
};

namespace detail {

inline double log_base_b(const SoftmaxBase& base) {
  double r = base.rho.get_d() * std::sqrt(static_cast<double>(base.sqrt_arg));
  return r * std::log2(static_cast<double>(base.n));
}

inline mpfr_prec_t derived_precision(const FeasibilitySystem& sys) {
  Rational maxexp(sys.params.L);
  auto consider = [&](const Rational& e) {
    Rational a = e < 0 ? -e : e;
    if (a > maxexp) maxexp = a;
  };
  for (const auto& c : sys.constraints) {
    consider(c.rhs_exp);
    consider(c.a_exp);
    for (const auto& [u, e] : c.lhs) consider(e);
  }
  for (const auto& [e, coef] : sys.delta.terms()) consider(e);
  double bits = maxexp.get_d() * log_base_b(sys.params.base);
  double want = 4.0 * bits;
  if (want < 256) return 256;
  return static_cast<mpfr_prec_t>(want) + 64;
}

}  // namespace detail

inline DecideResult decide(const FeasibilitySystem& sys, DecisionConfig cfg = {}) {
  int n = sys.n;
  if (sys.delta.term_count() != 1) {
    throw GameError("decide requires a single-term positive slack");
  }
  const auto& [delta_exp, delta_coef] = *sys.delta.terms().begin();
  if (delta_coef <= 0) throw GameError("decide requires a positive slack");

  double lnb = detail::log_base_b(sys.params.base) * std::log(2.0);
  double ln2 = std::log(2.0);
  Rational sgn_t = (sys.direction == Direction::Lower ? sys.t : -sys.t);

  // Any point of the unrelaxed system carries the margin box of side
  // s = delta / b^{rhs_exp} into the relaxed system; in b^-L coordinates
  // the side is b^{delta_exp - sgn_t - L}, and infeasibility may only be
  // declared once the ellipsoid volume drops below half that box.
  Rational side_exp = delta_exp - sgn_t - Rational(sys.params.L);
  double ln_side = side_exp.get_d() * lnb + std::log(delta_coef.get_d());
  double ln_eps = n * (ln_side - ln2) - ln2 - 2.0;

  Rational radius = Rational(2) * Rational(isqrt(Integer(n)) + 1);
  double ln_vol0 = n * std::log(radius.get_d()) + n * 0.5 * std::log(M_PI) -
                   std::lgamma(n * 0.5 + 1.0);
  double rate = ellipsoid_log_rate(n);
  long bound = static_cast<long>(std::ceil((ln_eps - ln_vol0) / rate));
  if (bound < 1) bound = 1;

  // The shape matrix must resolve an eigenvalue ratio of roughly the squared
  // total volume shrink, on top of the coefficient magnitudes.
  mpfr_prec_t prec = cfg.precision_bits;
  if (!prec) {
    double shrink_bits = 2.0 * (ln_vol0 - ln_eps) / std::log(2.0);
    mpfr_prec_t want = static_cast<mpfr_prec_t>(shrink_bits) + 256;
    prec = std::max(detail::derived_precision(sys), want);
  }

  DecideResult res;
  res.max_iterations = cfg.max_iterations_override
                           ? cfg.max_iterations_override
                           : static_cast<long>(std::ceil(cfg.constant_factor * (bound + 16)));
  res.log_volume = ln_vol0;
  res.log_volume_threshold = ln_eps;
  res.scale_exp = Rational(sys.params.L);

  Rational delta_prime;
  if (cfg.delta_prime) {
    delta_prime = *cfg.delta_prime;
  } else {
    // Cuts may each shave a delta'-deep slab off the feasible region; keep
    // the total well under the margin box side.
    double e = (ln_side - std::log(4.0 * (bound + 1))) / ln2 - 8;
    delta_prime = pow_rat(Rational(2), static_cast<long>(std::floor(e)));
  }

  EllipsoidState st = make_ball(n, Rational(1, 2), radius, prec);
  for (;;) {
    std::vector<Rational> q;
    q.reserve(n);
    for (const auto& c : st.center) q.push_back(c.to_rational());
    SeparationResult sep = separate(sys, q, delta_prime, res.scale_exp);
    if (sep.inside) {
      if (!check_point(sys, symbolic_point(sys.params, q, res.scale_exp)).ok) {
        res.status = DecideStatus::PrecisionExhausted;
        return res;
      }
      res.status = DecideStatus::Feasible;
      res.y = std::move(q);
      return res;
    }
    if (res.iterations >= res.max_iterations) {
      res.status = DecideStatus::PrecisionExhausted;
      return res;
    }
    if (!ellipsoid_step(st, sep.c)) {
      res.status = DecideStatus::PrecisionExhausted;
      return res;
    }
    ++res.iterations;
    res.log_volume += rate;
    if (cfg.trace) {
      (*cfg.trace) << "{\"iteration\":" << res.iterations
                   << ",\"constraint\":" << sep.constraint_index
                   << ",\"log_volume\":" << res.log_volume << "}\n";
    }
    if (res.log_volume < ln_eps) {
      res.status = DecideStatus::Infeasible;
      return res;
    }
  }
}

}  // namespace bwr

#endif  // BWR_ELLIPSOID_HPP_
