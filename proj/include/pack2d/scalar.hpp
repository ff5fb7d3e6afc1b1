// Copyright 2026 The pack2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact rational scalars. Every length, area and threshold in the library is
// a Scalar; there is no floating-point stage in any packing decision.

#ifndef PACK2D_SCALAR_HPP_
#define PACK2D_SCALAR_HPP_

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pack2d {

using Scalar = mpq_class;

// Builds num/den in lowest terms.
inline Scalar Rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline Scalar Pos(const Scalar& x) { return sgn(x) > 0 ? x : Scalar(0); }

inline Scalar Min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

inline Scalar Max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

// "p/q" or "p" in lowest terms.
inline std::string ToString(const Scalar& x) { return x.get_str(); }

inline double ToDouble(const Scalar& x) { return x.get_d(); }

namespace internal {

inline bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace internal

// Parses a non-negative "p/q", integer, or decimal literal exactly; a decimal
// with d fractional digits becomes p/10^d. Throws std::invalid_argument.
inline Scalar ParseScalar(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("empty number");
  const size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = s.substr(slash + 1);
    if (!internal::AllDigits(num) || !internal::AllDigits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) +
                                  "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      throw std::invalid_argument("zero denominator in '" +
                                  std::string(text) + "'");
    }
    Scalar q(n, d);
    q.canonicalize();
    return q;
  }
  const size_t dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) {
    throw std::invalid_argument("malformed decimal '" + std::string(text) +
                                "'");
  }
  if ((!int_part.empty() && !internal::AllDigits(int_part)) ||
      (!frac_part.empty() && !internal::AllDigits(frac_part)) ||
      (int_part.empty() && frac_part.empty())) {
    throw std::invalid_argument("malformed number '" + std::string(text) +
                                "'");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class n(digits, 10);
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, frac_part.size());
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace pack2d

#endif  // PACK2D_SCALAR_HPP_
