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

// Seeded random source with platform-independent draws.

#ifndef PACK2D_RNG_HPP_
#define PACK2D_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "pack2d/scalar.hpp"

namespace pack2d {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [lo, hi] by rejection.
  int64_t Uniform(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(Next());
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t r;
    do {
      r = Next();
    } while (r >= limit);
    return lo + static_cast<int64_t>(r % span);
  }

  bool Bernoulli(int64_t num, int64_t den) { return Uniform(0, den - 1) < num; }

  // Uniform multiple of 1/den in [lo/den, hi/den].
  Scalar Grid(int64_t lo, int64_t hi, int64_t den) {
    return Rational(Uniform(lo, hi), den);
  }

  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(Uniform(0, static_cast<int64_t>(v.size()) - 1))];
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(Uniform(0, static_cast<int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pack2d

#endif  // PACK2D_RNG_HPP_
