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

#ifndef BWR_BNUMBER_HPP_
#define BWR_BNUMBER_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bwr/rational.hpp"
#include "bwr/real.hpp"

namespace bwr {

// The softmax base b = n ^ (rho * sqrt(sqrt_arg)). In paper mode the
// exponent 2/eps = 4*Lambda carries a sqrt(k*2^k) factor, so b itself is
// irrational and is never materialized; everything downstream works with
// exponents q meaning b^q.
struct SoftmaxBase {
  long n = 2;
  Rational rho = 1;
  unsigned long sqrt_arg = 1;

  bool operator==(const SoftmaxBase&) const = default;

  // log2(b) = rho * sqrt(sqrt_arg) * log2(n), as a certified interval.
  IReal log2b(mpfr_prec_t prec) const {
    IReal r = IReal::of(rho, prec);
    if (sqrt_arg != 1) {
      r = r * IReal::sqrt(IReal::of(Rational(static_cast<long>(sqrt_arg)), prec));
    }
    return r * IReal::log2(IReal::of(Rational(n), prec));
  }

  // Exact rational value of b^q when the overall exponent of n is a
  // non-negative integer; nullopt otherwise.
  std::optional<Rational> exact_pow(const Rational& q) const {
    if (sqrt_arg != 1) return std::nullopt;
    Rational e = q * rho;
    if (!is_integer(e)) return std::nullopt;
    long ee = e.get_num().get_si();
    if (!e.get_num().fits_slong_p()) return std::nullopt;
    return pow_rat(Rational(n), ee);
  }

  std::string str() const {
    std::string s = std::to_string(n) + "^(" + to_string(rho);
    if (sqrt_arg != 1) s += "*sqrt(" + std::to_string(sqrt_arg) + ")";
    return s + ")";
  }
};

// A finite sum  sum_i coef_i * b^{exp_i}  with rational coefficients and
// exponents, kept symbolic. Signs are decided by cancellation first and a
// certified interval evaluation with precision escalation second.
class BSum {
 public:
  BSum() = default;
  explicit BSum(SoftmaxBase base) : base_(base) {}

  static BSum b_pow(const SoftmaxBase& base, const Rational& exp, const Rational& coef = 1) {
    BSum s(base);
    if (coef != 0) s.terms_[exp] = coef;
    return s;
  }
  static BSum constant(const SoftmaxBase& base, const Rational& c) {
    return b_pow(base, Rational(0), c);
  }

  const SoftmaxBase& base() const { return base_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Rational, Rational>& terms() const { return terms_; }

  // Exact rational value if every term materializes exactly.
  std::optional<Rational> exact_value() const {
    Rational v = 0;
    for (const auto& [e, c] : terms_) {
      auto p = base_.exact_pow(e);
      if (!p) return std::nullopt;
      v += c * *p;
    }
    return v;
  }

  BSum& operator+=(const BSum& o) {
    check_base(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BSum& operator-=(const BSum& o) {
    check_base(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend BSum operator+(BSum a, const BSum& b) { return a += b; }
  friend BSum operator-(BSum a, const BSum& b) { return a -= b; }
  friend BSum operator-(const BSum& a) {
    BSum r(a.base_);
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend BSum operator*(const BSum& a, const Rational& s) {
    BSum r(a.base_);
    if (s != 0) {
      for (const auto& [e, c] : a.terms_) r.terms_[e] = c * s;
    }
    return r;
  }
  friend BSum operator*(const BSum& a, const BSum& b) {
    a.check_base(b);
    BSum r(a.base_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    }
    return r;
  }
  // Multiplies every exponent shift: this * b^exp.
  BSum shifted(const Rational& exp) const {
    BSum r(base_);
    for (const auto& [e, c] : terms_) r.terms_[e + exp] = c;
    return r;
  }
  BSum pow(unsigned long e) const {
    BSum r = constant(base_, 1);
    BSum a = *this;
    while (e) {
      if (e & 1) r = r * a;
      a = a * a;
      e >>= 1;
    }
    return r;
  }

  // Certified interval evaluation.
  IReal eval(mpfr_prec_t prec) const {
    IReal sum(prec);
    IReal l2b = base_.log2b(prec);
    for (const auto& [e, c] : terms_) {
      IReal t = IReal::exp2(IReal::of(e, prec) * l2b) * IReal::of(c, prec);
      sum = sum + t;
    }
    return sum;
  }
  Real eval_mid(mpfr_prec_t prec) const {
    IReal iv = eval(prec);
    return Real::mul(iv.lo + iv.hi, Real::of(Rational(1, 2), prec), prec, MPFR_RNDN);
  }

  // Certified sign. Returns 0 both for exact zero (full cancellation) and
  // for values indistinguishable from zero at the escalation cap.
  int sign(mpfr_prec_t cap = 1 << 16) const {
    if (terms_.empty()) return 0;
    bool pos = true, neg = true;
    for (const auto& [e, c] : terms_) {
      if (c > 0) neg = false;
      if (c < 0) pos = false;
    }
    if (pos) return 1;
    if (neg) return -1;
    for (mpfr_prec_t p = 192; p <= cap; p *= 2) {
      int s = eval(p).sign();
      if (s != 0) return s;
    }
    return 0;
  }

  friend int compare(const BSum& a, const BSum& b) { return (a - b).sign(); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += to_string(c) + "*b^(" + to_string(e) + ")";
    }
    return s;
  }

 private:
  void check_base(const BSum& o) const {
    if (!o.terms_.empty() && !terms_.empty() && !(base_ == o.base_)) {
      throw std::logic_error("BSum: mixed softmax bases");
    }
    if (terms_.empty() && !o.terms_.empty()) {
      const_cast<BSum*>(this)->base_ = o.base_;
    }
  }
  void add_term(const Rational& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SoftmaxBase base_;
  std::map<Rational, Rational> terms_;
};

}  // namespace bwr

#endif  // BWR_BNUMBER_HPP_
