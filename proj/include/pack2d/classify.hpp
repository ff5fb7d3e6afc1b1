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

// Wide/high/small/big classification, aggregate measures and the
// delta-threshold search.

#ifndef PACK2D_CLASSIFY_HPP_
#define PACK2D_CLASSIFY_HPP_

#include <optional>
#include <vector>

#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

// ---------------------------------------------------------------------------
// Aggregates.

inline Scalar Vol(const Instance& items) {
  Scalar s = 0;
  for (const Item& it : items) s += it.w * it.h;
  return s;
}

inline Scalar TotalWidth(const Instance& items) {
  Scalar s = 0;
  for (const Item& it : items) s += it.w;
  return s;
}

inline Scalar TotalHeight(const Instance& items) {
  Scalar s = 0;
  for (const Item& it : items) s += it.h;
  return s;
}

inline Scalar MaxWidth(const Instance& items) {
  Scalar m = 0;
  for (const Item& it : items) {
    if (it.w > m) m = it.w;
  }
  return m;
}

inline Scalar MaxHeight(const Instance& items) {
  Scalar m = 0;
  for (const Item& it : items) {
    if (it.h > m) m = it.h;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Predicates.

inline const Scalar& Half() {
  static const Scalar kHalf(1, 2);
  return kHalf;
}

// Extra area beyond the trivial stack bound.
inline Scalar Xi() { return Rational(3, 40); }

inline bool IsWide(const Item& it) { return it.w > Half(); }
inline bool IsHigh(const Item& it) { return it.h > Half(); }
inline bool IsBig(const Item& it) { return IsWide(it) && IsHigh(it); }
inline bool IsSmall(const Item& it) { return !IsWide(it) && !IsHigh(it); }

struct ItemClasses {
  Instance wide_only;  // W \ H
  Instance high_only;  // H \ W
  Instance big;        // W n H
  Instance small;      // S

  Instance Wide() const { return Concat(wide_only, big); }
  Instance High() const { return Concat(high_only, big); }
  size_t size() const {
    return wide_only.size() + high_only.size() + big.size() + small.size();
  }
};

inline ItemClasses Classify(const Instance& items) {
  ItemClasses c;
  for (const Item& it : items) {
    if (IsBig(it)) {
      c.big.push_back(it);
    } else if (IsWide(it)) {
      c.wide_only.push_back(it);
    } else if (IsHigh(it)) {
      c.high_only.push_back(it);
    } else {
      c.small.push_back(it);
    }
  }
  return c;
}

enum class Axis { kWidth, kHeight };

// W_delta = {w > 1 - delta}.
inline Instance DeltaWide(const Instance& items, const Scalar& delta) {
  const Scalar bound = 1 - delta;
  return Filter(items, [&](const Item& it) { return it.w > bound; });
}

// H_delta = {h > 1 - delta}.
inline Instance DeltaHigh(const Instance& items, const Scalar& delta) {
  const Scalar bound = 1 - delta;
  return Filter(items, [&](const Item& it) { return it.h > bound; });
}

// gamma = (delta - eps) / (1 + 2 delta).
inline Scalar Gamma(const Scalar& delta, const Scalar& eps) {
  return Scalar((delta - eps) / (1 + 2 * delta));
}

struct DeltaSets {
  Scalar delta;
  Scalar gamma;
  Instance w_delta;
  Instance h_delta;
};

inline DeltaSets MakeDeltaSets(const Instance& items, const Scalar& delta,
                               const Scalar& eps) {
  return {delta, Gamma(delta, eps), DeltaWide(items, delta),
          DeltaHigh(items, delta)};
}

// Height of W_delta on the width axis, width of H_delta on the height axis.
inline Scalar DeltaLoad(const Instance& items, const Scalar& delta,
                        Axis axis) {
  return axis == Axis::kWidth ? TotalHeight(DeltaWide(items, delta))
                              : TotalWidth(DeltaHigh(items, delta));
}

inline void CheckOpt1Epsilon(const Scalar& eps) {
  if (sgn(eps) <= 0 || eps >= Rational(1, 200)) {
    throw PreconditionViolated("epsilon " + ToString(eps) +
                               " outside (0, 1/200)");
  }
}

// Breakpoints of the load step function inside (eps, 1/2], ascending.
inline std::vector<Scalar> DeltaCandidates(const Instance& items,
                                           const Scalar& eps, Axis axis) {
  std::vector<Scalar> out;
  for (const Item& it : items) {
    const Scalar& side = axis == Axis::kWidth ? it.w : it.h;
    if (side <= Half()) continue;
    Scalar d = 1 - side;
    if (d > eps && d < Half()) out.push_back(d);
  }
  out.push_back(Half());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Smallest delta in (eps, 1/2] with load(delta) <= gamma(delta), if any.
inline std::optional<Scalar> FindFeasibleDelta(const Instance& items,
                                               const Scalar& eps, Axis axis) {
  CheckOpt1Epsilon(eps);
  for (const Scalar& d : DeltaCandidates(items, eps, axis)) {
    if (DeltaLoad(items, d, axis) <= Gamma(d, eps)) return d;
  }
  return std::nullopt;
}

// Vol(W u H) >= 2 xi + (w(H) + h(W)) / 2. Requires both delta searches to
// fail.
inline bool AreaGuaranteeCheck(const Instance& items, const Scalar& eps) {
  if (FindFeasibleDelta(items, eps, Axis::kWidth) ||
      FindFeasibleDelta(items, eps, Axis::kHeight)) {
    throw PreconditionViolated("a feasible delta exists");
  }
  const ItemClasses c = Classify(items);
  const Instance wide = c.Wide();
  const Instance high = c.High();
  const Scalar vol_wh = Vol(c.wide_only) + Vol(c.high_only) + Vol(c.big);
  return vol_wh >= 2 * Xi() + (TotalWidth(high) + TotalHeight(wide)) / 2;
}

}  // namespace pack2d

#endif  // PACK2D_CLASSIFY_HPP_
