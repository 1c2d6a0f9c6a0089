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

#ifndef BWR_RATIONAL_HPP_
#define BWR_RATIONAL_HPP_

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace bwr {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer numerator(const Rational& q) { return q.get_num(); }
inline Integer denominator(const Rational& q) { return q.get_den(); }

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// floor(sqrt(a)), a >= 0.
inline Integer isqrt(const Integer& a) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Integer& a) {
  return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// q^e for possibly negative integer e; q != 0 when e < 0.
inline Rational pow_rat(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  Rational r;
  unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num().get_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den().get_mpz_t(), a);
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw std::domain_error("pow_rat: zero to negative power");
    return Rational(1) / r;
  }
  return r;
}

inline Integer floor_rat(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Integer ceil_rat(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Parses "p", "p/q" or "-p/q". Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace bwr

#endif  // BWR_RATIONAL_HPP_
