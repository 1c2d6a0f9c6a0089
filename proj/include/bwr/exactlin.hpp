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

#ifndef BWR_EXACTLIN_HPP_
#define BWR_EXACTLIN_HPP_

#include <stdexcept>
#include <vector>

#include "bwr/rational.hpp"

namespace bwr {

using RatMatrix = std::vector<std::vector<Rational>>;

// Solves A * X = B exactly for square nonsingular A by fraction-free
// (Bareiss) elimination on the integer-scaled augmented matrix.
inline RatMatrix solve_linear(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size();
  if (n == 0) return {};
  size_t m = b.empty() ? 0 : b[0].size();
  if (b.size() != n) throw std::invalid_argument("solve_linear: rhs row count mismatch");

  // Integer-scale each augmented row by the lcm of its denominators.
  std::vector<std::vector<Integer>> w(n, std::vector<Integer>(n + m));
  for (size_t i = 0; i < n; ++i) {
    Integer den = 1;
    for (size_t j = 0; j < n; ++j) den = lcm(den, denominator(a[i][j]));
    for (size_t j = 0; j < m; ++j) den = lcm(den, denominator(b[i][j]));
    for (size_t j = 0; j < n; ++j) {
      Rational s = a[i][j] * Rational(den);
      w[i][j] = numerator(s);
    }
    for (size_t j = 0; j < m; ++j) {
      Rational s = b[i][j] * Rational(den);
      w[i][n + j] = numerator(s);
    }
  }

  Integer prev = 1;
  std::vector<size_t> rowperm(n);
  for (size_t i = 0; i < n; ++i) rowperm[i] = i;
  for (size_t k = 0; k + 1 <= n; ++k) {
    size_t piv = k;
    while (piv < n && w[rowperm[piv]][k] == 0) ++piv;
    if (piv == n) throw std::domain_error("solve_linear: singular matrix");
    std::swap(rowperm[k], rowperm[piv]);
    const auto& rk = w[rowperm[k]];
    for (size_t i = k + 1; i < n; ++i) {
      auto& ri = w[rowperm[i]];
      for (size_t j = k + 1; j < n + m; ++j) {
        ri[j] = (rk[k] * ri[j] - ri[k] * rk[j]) / prev;  // division is exact
      }
      ri[k] = 0;
    }
    prev = rk[k];
  }

  RatMatrix x(n, std::vector<Rational>(m));
  for (size_t col = 0; col < m; ++col) {
    for (size_t ii = n; ii-- > 0;) {
      const auto& r = w[rowperm[ii]];
      Rational s(r[n + col]);
      for (size_t j = ii + 1; j < n; ++j) s -= Rational(r[j]) * x[j][col];
      if (r[ii] == 0) throw std::domain_error("solve_linear: singular matrix");
      x[ii][col] = s / Rational(r[ii]);
    }
  }
  return x;
}

}  // namespace bwr

#endif  // BWR_EXACTLIN_HPP_
