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

#ifndef BWR_REAL_HPP_
#define BWR_REAL_HPP_

#include <mpfr.h>

#include <string>
#include <utility>

#include "bwr/rational.hpp"

namespace bwr {

// Thin RAII wrapper over mpfr_t with explicit per-value precision.
// Binary operators round to nearest at the wider operand precision;
// directed-rounding variants are provided where one-sided bounds matter.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  static Real of(const Integer& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Every finite mpfr value is a dyadic rational; this conversion is exact.
  Rational to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  static mpfr_prec_t joint(const Real& a, const Real& b) {
    return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
  }

#define BWR_REAL_BINOP(name, fn)                                               \
  static Real name(const Real& a, const Real& b, mpfr_prec_t prec,             \
                   mpfr_rnd_t rnd) {                                           \
    Real r(prec);                                                              \
    fn(r.v_, a.v_, b.v_, rnd);                                                 \
    return r;                                                                  \
  }
  BWR_REAL_BINOP(add, mpfr_add)
  BWR_REAL_BINOP(sub, mpfr_sub)
  BWR_REAL_BINOP(mul, mpfr_mul)
  BWR_REAL_BINOP(div, mpfr_div)
#undef BWR_REAL_BINOP

  friend Real operator+(const Real& a, const Real& b) { return add(a, b, joint(a, b), MPFR_RNDN); }
  friend Real operator-(const Real& a, const Real& b) { return sub(a, b, joint(a, b), MPFR_RNDN); }
  friend Real operator*(const Real& a, const Real& b) { return mul(a, b, joint(a, b), MPFR_RNDN); }
  friend Real operator/(const Real& a, const Real& b) { return div(a, b, joint(a, b), MPFR_RNDN); }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

  static Real sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_sqrt(r.v_, a.v_, rnd);
    return r;
  }
  static Real exp2(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_exp2(r.v_, a.v_, rnd);
    return r;
  }
  static Real log2(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_log2(r.v_, a.v_, rnd);
    return r;
  }
  static Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  std::string str(size_t digits = 8) const {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string out = s ? s : "nan";
    if (s) mpfr_free_str(s);
    return out + "e" + std::to_string(e);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding; used wherever a
// certified one-sided bound is required.
struct IReal {
  Real lo, hi;

  explicit IReal(mpfr_prec_t prec = 64) : lo(prec), hi(prec) {}
  static IReal of(const Rational& q, mpfr_prec_t prec) {
    IReal r(prec);
    r.lo = Real::of(q, prec, MPFR_RNDD);
    r.hi = Real::of(q, prec, MPFR_RNDU);
    return r;
  }
  static IReal exact(const Real& x) {
    IReal r(x.prec());
    r.lo = x;
    r.hi = x;
    return r;
  }

  mpfr_prec_t prec() const { return std::max(lo.prec(), hi.prec()); }
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  // Certified sign: -1, 0 (straddles), +1.
  int sign() const {
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
    return 0;
  }

  friend IReal operator+(const IReal& a, const IReal& b) {
    IReal r(std::max(a.prec(), b.prec()));
    r.lo = Real::add(a.lo, b.lo, r.prec(), MPFR_RNDD);
    r.hi = Real::add(a.hi, b.hi, r.prec(), MPFR_RNDU);
    return r;
  }
  friend IReal operator-(const IReal& a, const IReal& b) {
    IReal r(std::max(a.prec(), b.prec()));
    r.lo = Real::sub(a.lo, b.hi, r.prec(), MPFR_RNDD);
    r.hi = Real::sub(a.hi, b.lo, r.prec(), MPFR_RNDU);
    return r;
  }
  friend IReal operator*(const IReal& a, const IReal& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real c[4] = {Real::mul(a.lo, b.lo, p, MPFR_RNDD), Real::mul(a.lo, b.hi, p, MPFR_RNDD),
                 Real::mul(a.hi, b.lo, p, MPFR_RNDD), Real::mul(a.hi, b.hi, p, MPFR_RNDD)};
    Real d[4] = {Real::mul(a.lo, b.lo, p, MPFR_RNDU), Real::mul(a.lo, b.hi, p, MPFR_RNDU),
                 Real::mul(a.hi, b.lo, p, MPFR_RNDU), Real::mul(a.hi, b.hi, p, MPFR_RNDU)};
    IReal r(p);
    r.lo = c[0];
    r.hi = d[0];
    for (int i = 1; i < 4; ++i) {
      if (c[i] < r.lo) r.lo = c[i];
      if (d[i] > r.hi) r.hi = d[i];
    }
    return r;
  }

  static IReal exp2(const IReal& a) {
    IReal r(a.prec());
    r.lo = Real::exp2(a.lo, a.prec(), MPFR_RNDD);
    r.hi = Real::exp2(a.hi, a.prec(), MPFR_RNDU);
    return r;
  }
  // Requires a.lo > 0.
  static IReal log2(const IReal& a) {
    IReal r(a.prec());
    r.lo = Real::log2(a.lo, a.prec(), MPFR_RNDD);
    r.hi = Real::log2(a.hi, a.prec(), MPFR_RNDU);
    return r;
  }
  // Requires a.lo >= 0.
  static IReal sqrt(const IReal& a) {
    IReal r(a.prec());
    r.lo = Real::sqrt(a.lo, a.prec(), MPFR_RNDD);
    r.hi = Real::sqrt(a.hi, a.prec(), MPFR_RNDU);
    return r;
  }
};

}  // namespace bwr

#endif  // BWR_REAL_HPP_
