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

#ifndef BWR_PARAMS_HPP_
#define BWR_PARAMS_HPP_

#include <optional>

#include "bwr/bnumber.hpp"
#include "bwr/game.hpp"
#include "bwr/rational.hpp"

namespace bwr {

enum class Mode { Paper, Practical };

// Derived constants governing precision and search:
//   Lambda = sqrt(k) * 2^{k/2} * D^{k+1}   (value-denominator bound; n for k=0)
//   eps    = 1 / (2*Lambda)                (value-grid resolution)
//   L      = n*U*k*(2D)^k                  (potential bound; n*U for k=0)
//   b      = n^{2/eps}                     (softmax base, symbolic)
//   delta(t) = 1/2 * b^{-t-L} * (1 - 1/n)  (feasibility slack)
struct GameParams {
  Mode mode = Mode::Practical;
  long n = 0;
  long k = 0;
  Rational U;        // effective max reward (scaled by D in paper mode)
  Integer D = 1;
  Rational reward_scale = 1;  // rewards of `scaled` game = original * reward_scale

  Integer lambda_sq;     // Lambda^2, exact integer companion
  bool lambda_is_n = false;
  Integer den_bound;     // ceil(n*Lambda) (n when k=0): max value denominator
  Rational lambda_lower; // certified Lambda bounds (2^-32 apart)
  Rational lambda_upper;

  Integer L = 0;
  SoftmaxBase base;

  // Certified upper bound on the softmax gap 2*log_b(n), the one-sided
  // uncertainty of a feasibility answer about t_max / t_min.
  Rational eps_eff_upper;

  BSum delta(const Rational& t) const {
    Rational coef(n > 1 ? Rational(n - 1, 2 * n) : Rational(1, 4));
    coef.canonicalize();
    return BSum::b_pow(base, -t - Rational(L), coef);
  }

  BSum b_pow(const Rational& q, const Rational& coef = 1) const {
    return BSum::b_pow(base, q, coef);
  }
};

namespace detail {
// Largest s with s^2 | m; returns (s, m/s^2).
inline std::pair<unsigned long, unsigned long> extract_square(unsigned long m) {
  unsigned long s = 1;
  for (unsigned long d = 2; d * d <= m; ++d) {
    while (m % (d * d) == 0) {
      m /= d * d;
      s *= d;
    }
  }
  return {s, m};
}
}  // namespace detail

struct DeriveOptions {
  long practical_exponent = 8;           // practical mode: b = n^c
  std::optional<Integer> potential_bound;  // practical mode: override L
};

inline GameParams derive_params(const BwrGame& game, Mode mode, DeriveOptions opt = {}) {
  GameParams p;
  p.mode = mode;
  p.n = game.size();
  p.k = game.random_count();
  p.D = game.prob_denominator();
  p.U = game.max_reward();
  if (mode == Mode::Paper) {
    // Rewards become multiples of D so that A^D in the separation proof
    // stays an integer power of b.
    p.reward_scale = Rational(p.D);
    p.U *= p.reward_scale;
  }

  unsigned long k = static_cast<unsigned long>(p.k);
  if (p.k == 0) {
    // Lambda degenerates to 0; BW-game values are mean cycle weights with
    // denominator <= n.
    p.lambda_is_n = true;
    p.lambda_sq = Integer(p.n) * Integer(p.n);
  } else {
    p.lambda_sq = Integer(k) * pow_int(Integer(2), k) * pow_int(p.D, 2 * k + 2);
  }
  {
    // Value denominators combine the probability-driven Lambda factor with
    // the deterministic cycle length (up to n): a cycle through a single
    // prob-1 random position already yields denominator n with Lambda ~ 1.
    Integer db_sq =
        p.lambda_is_n ? p.lambda_sq : p.lambda_sq * Integer(p.n) * Integer(p.n);
    p.den_bound = is_perfect_square(db_sq) ? isqrt(db_sq) : isqrt(db_sq) + 1;
  }
  {
    // Lambda within 2^-32: floor(sqrt(Lambda^2 * 2^64)) / 2^32.
    Integer scaled = isqrt(p.lambda_sq << 64);
    p.lambda_lower = Rational(scaled) / Rational(Integer(1) << 32);
    p.lambda_upper = Rational(scaled + 1) / Rational(Integer(1) << 32);
  }

  if (p.k == 0) {
    p.L = std::max(ceil_rat(Rational(p.n) * p.U), Integer(1));
  } else {
    p.L = ceil_rat(Rational(p.n) * p.U * Rational(p.k) *
                   pow_rat(Rational(2 * p.D), p.k));
    if (p.L < 1) p.L = 1;
  }
  if (mode == Mode::Practical && opt.potential_bound) {
    p.L = *opt.potential_bound;
    if (p.L < 1) p.L = 1;
  }

  p.base.n = std::max(p.n, 2L);
  if (mode == Mode::Paper) {
    if (p.k == 0) {
      p.base.rho = Rational(4 * p.n);
      p.base.sqrt_arg = 1;
    } else {
      // 2/eps = 4*Lambda = 4*D^{k+1}*sqrt(k*2^k).
      auto [s, arg] = detail::extract_square(k << k);
      p.base.rho = Rational(4) * pow_rat(Rational(p.D), p.k + 1) * Rational(static_cast<long>(s));
      p.base.sqrt_arg = arg;
    }
    // eps = 2*log_b(n) exactly; report a certified upper bound.
    p.eps_eff_upper = p.lambda_is_n ? Rational(1, 2 * p.n) : Rational(1, 2) / p.lambda_lower;
  } else {
    p.base.rho = Rational(opt.practical_exponent);
    p.base.sqrt_arg = 1;
    p.eps_eff_upper = Rational(2) / Rational(opt.practical_exponent);
  }
  return p;
}

}  // namespace bwr

#endif  // BWR_PARAMS_HPP_
