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

// Solver parameters and their environment overrides. Each field can be set
// through the variable named after it in upper snake case: K, EPS_OPT1,
// EXACT_LIMIT, ENUMERATION_LIMIT, ORACLE_LIMIT.

#ifndef PACK2D_CONFIG_HPP_
#define PACK2D_CONFIG_HPP_

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

#include "pack2d/errors.hpp"
#include "pack2d/knapsack.hpp"
#include "pack2d/optconst.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

struct SolveConfig {
  int k = 3;  // constant-optimum packers run for l = 2..k-1
  Scalar eps_opt1 = Rational(1, 256);
  int exact_limit = 10;
  int enumeration_limit = 12;
  int oracle_limit = 8;

  // Throws PreconditionViolated when a field is out of range.
  void Validate() const {
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    if (sgn(eps_opt1) <= 0 || eps_opt1 >= Rational(1, 200)) {
      throw PreconditionViolated("eps_opt1 must lie in (0, 1/200)");
    }
    if (exact_limit < 0 || enumeration_limit < 0 || oracle_limit < 0) {
      throw PreconditionViolated("limits must be non-negative");
    }
  }

  // Derived, never set on its own.
  Scalar EpsConst() const { return OptConstEpsilon(k); }

  ExactOptions Exact() const {
    ExactOptions o;
    o.exact_limit = exact_limit;
    return o;
  }

  OptConstOptions Const() const {
    OptConstOptions o;
    o.exact = Exact();
    o.enumeration_limit = enumeration_limit;
    return o;
  }
};

using EnvLookup = std::function<const char*(const char*)>;

namespace internal {

inline int EnvInt(const char* name, const std::string& value) {
  if (!AllDigits(value) || value.size() > 9) {
    throw PreconditionViolated(std::string(name) +
                               " must be a non-negative integer, got '" +
                               value + "'");
  }
  return std::stoi(value);
}

}  // namespace internal

// Applies the overrides found by `lookup` and validates the result.
inline SolveConfig ApplyEnvironment(SolveConfig config,
                                    const EnvLookup& lookup = [](const char* n) {
                                      return std::getenv(n);
                                    }) {
  if (const char* v = lookup("K")) config.k = internal::EnvInt("K", v);
  if (const char* v = lookup("EPS_OPT1")) {
    try {
      config.eps_opt1 = ParseScalar(v);
    } catch (const std::invalid_argument& e) {
      throw PreconditionViolated(std::string("EPS_OPT1: ") + e.what());
    }
  }
  if (const char* v = lookup("EXACT_LIMIT")) {
    config.exact_limit = internal::EnvInt("EXACT_LIMIT", v);
  }
  if (const char* v = lookup("ENUMERATION_LIMIT")) {
    config.enumeration_limit = internal::EnvInt("ENUMERATION_LIMIT", v);
  }
  if (const char* v = lookup("ORACLE_LIMIT")) {
    config.oracle_limit = internal::EnvInt("ORACLE_LIMIT", v);
  }
  config.Validate();
  return config;
}

}  // namespace pack2d

#endif  // PACK2D_CONFIG_HPP_
