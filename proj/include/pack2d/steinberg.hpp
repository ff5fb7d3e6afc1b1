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

// Area-condition rectangle packer for a region (a, b) and the half-area
// packer for sets without wide items.

#ifndef PACK2D_STEINBERG_HPP_
#define PACK2D_STEINBERG_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "pack2d/classify.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

// w_max <= a, h_max <= b and 2 Vol <= ab - (2 w_max - a)+ (2 h_max - b)+.
inline bool SteinbergCondition(const Instance& items, const Scalar& a,
                               const Scalar& b) {
  if (items.empty()) return true;
  const Scalar u = MaxWidth(items);
  const Scalar v = MaxHeight(items);
  if (u > a || v > b) return false;
  return 2 * Vol(items) <= a * b - Pos(2 * u - a) * Pos(2 * v - b);
}

namespace internal {

struct SetStats {
  Scalar u;
  Scalar v;
  Scalar area;

  void Add(const Item& it) {
    if (it.w > u) u = it.w;
    if (it.h > v) v = it.h;
    area += it.w * it.h;
  }
};

inline bool ConditionFromStats(const SetStats& s, const Scalar& a,
                               const Scalar& b) {
  if (sgn(s.area) == 0) return true;
  if (s.u > a || s.v > b) return false;
  return 2 * s.area <= a * b - Pos(2 * s.u - a) * Pos(2 * s.v - b);
}

// Smallest width t such that the set satisfies the condition in (t, b).
inline std::optional<Scalar> MinWidth(const SetStats& s, const Scalar& b) {
  if (sgn(s.area) == 0) return Scalar(0);
  if (s.v > b) return std::nullopt;
  const Scalar c = Pos(2 * s.v - b);
  Scalar t;
  if (2 * s.area <= 2 * s.u * b) {
    t = (2 * s.area + 2 * s.u * c) / (b + c);
  } else {
    t = 2 * s.area / b;
  }
  return Max(s.u, t);
}

inline SetStats StatsOf(const Instance& items) {
  SetStats s;
  for (const Item& it : items) s.Add(it);
  return s;
}

enum class Order { kWidth, kHeight, kArea };

inline Instance SortedBy(const Instance& items, Order order) {
  switch (order) {
    case Order::kWidth:
      return Sorted(items, ByWidthDesc);
    case Order::kHeight:
      return Sorted(items, ByHeightDesc);
    case Order::kArea:
      return Sorted(items, ByAreaDesc);
  }
  return items;
}

inline BinLayout SteinbergRec(const Instance& items, const Scalar& a,
                              const Scalar& b);

// Tools below work in the current frame and return std::nullopt when they do
// not apply.

// Stack of items with 2w >= a at the bottom, rest above.
inline std::optional<BinLayout> TryStack(const Instance& items,
                                         const Scalar& a, const Scalar& b) {
  const Instance s = Sorted(items, ByWidthDesc);
  const size_t n = s.size();
  // Suffix statistics of the rest.
  std::vector<SetStats> suffix(n + 1);
  for (size_t i = n; i-- > 0;) {
    suffix[i] = suffix[i + 1];
    suffix[i].Add(s[i]);
  }
  size_t best = 0;
  Scalar h = 0;
  Scalar best_h = 0;
  for (size_t k = 1; k <= n; ++k) {
    if (2 * s[k - 1].w < a) break;
    h += s[k - 1].h;
    if (h > b) break;
    if (h + suffix[k].v <= b && ConditionFromStats(suffix[k], a, b - h)) {
      best = k;
      best_h = h;
    }
  }
  if (best == 0) return std::nullopt;
  BinLayout out;
  out.width = a;
  out.height = b;
  Scalar y = 0;
  for (size_t k = 0; k < best; ++k) {
    out.Place(s[k], 0, y);
    y += s[k].h;
  }
  const Instance rest(s.begin() + best, s.end());
  out.Embed(SteinbergRec(rest, a, b - best_h), 0, best_h);
  return out;
}

// Vertical cut into two regions each satisfying the condition.
inline std::optional<BinLayout> TrySplit(const Instance& items,
                                         const Scalar& a, const Scalar& b) {
  const size_t n = items.size();
  for (Order order : {Order::kWidth, Order::kHeight, Order::kArea}) {
    const Instance s = SortedBy(items, order);
    std::vector<SetStats> suffix(n + 1);
    for (size_t i = n; i-- > 0;) {
      suffix[i] = suffix[i + 1];
      suffix[i].Add(s[i]);
    }
    SetStats prefix;
    for (size_t m = 1; m < n; ++m) {
      prefix.Add(s[m - 1]);
      const auto l1 = MinWidth(prefix, b);
      if (!l1) continue;
      const auto l2 = MinWidth(suffix[m], b);
      if (!l2 || *l1 + *l2 > a) continue;
      const Instance g1(s.begin(), s.begin() + m);
      const Instance g2(s.begin() + m, s.end());
      BinLayout out;
      out.width = a;
      out.height = b;
      out.Embed(SteinbergRec(g1, *l1, b), 0, 0);
      out.Embed(SteinbergRec(g2, a - *l1, b), *l1, 0);
      return out;
    }
  }
  return std::nullopt;
}

// Greedy row at the bottom, rest above.
inline std::optional<BinLayout> TryRow(const Instance& items, const Scalar& a,
                                       const Scalar& b) {
  for (Order order : {Order::kHeight, Order::kWidth, Order::kArea}) {
    const Instance s = SortedBy(items, order);
    std::vector<bool> in_row(s.size(), false);
    Scalar w = 0;
    Scalar hr = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (w + s[i].w > a) continue;
      in_row[i] = true;
      w += s[i].w;
      if (s[i].h > hr) hr = s[i].h;
      if (hr > b) break;
      Instance rest;
      for (size_t j = 0; j < s.size(); ++j) {
        if (!in_row[j]) rest.push_back(s[j]);
      }
      if (!SteinbergCondition(rest, a, b - hr)) continue;
      BinLayout out;
      out.width = a;
      out.height = b;
      Scalar x = 0;
      for (size_t j = 0; j < s.size(); ++j) {
        if (!in_row[j]) continue;
        out.Place(s[j], x, 0);
        x += s[j].w;
      }
      out.Embed(SteinbergRec(rest, a, b - hr), 0, hr);
      return out;
    }
  }
  return std::nullopt;
}

using Tool = std::optional<BinLayout> (*)(const Instance&, const Scalar&,
                                          const Scalar&);

// Applies `tool` in the frame and in the transposed frame.
inline std::optional<BinLayout> TryBothFrames(Tool tool, const Instance& items,
                                              const Scalar& a,
                                              const Scalar& b) {
  if (auto r = tool(items, a, b)) return r;
  if (auto r = tool(Transposed(items), b, a)) return Transposed(*r);
  return std::nullopt;
}

inline BinLayout SteinbergRec(const Instance& items, const Scalar& a,
                              const Scalar& b) {
  BinLayout out;
  out.width = a;
  out.height = b;
  if (items.empty()) return out;
  if (items.size() == 1) {
    out.Place(items[0], 0, 0);
    return out;
  }
  for (Tool tool : {Tool(&TryStack), Tool(&TrySplit), Tool(&TryRow)}) {
    if (auto r = TryBothFrames(tool, items, a, b)) {
      r->width = a;
      r->height = b;
      return *r;
    }
  }
  throw InternalError("strip packer found no decomposition for " +
                      std::to_string(items.size()) + " items in region " +
                      ToString(a) + " x " + ToString(b));
}

}  // namespace internal

// Packs every item into region (a, b). Throws ConditionViolated when the
// area condition fails.
inline BinLayout SteinbergPack(const Instance& items, const Scalar& a,
                               const Scalar& b) {
  if (sgn(a) <= 0 || sgn(b) <= 0) {
    throw PreconditionViolated("region must have positive size");
  }
  if (!SteinbergCondition(items, a, b)) {
    throw ConditionViolated("area condition fails for " +
                            std::to_string(items.size()) +
                            " items in region " + ToString(a) + " x " +
                            ToString(b));
  }
  return internal::SteinbergRec(items, a, b);
}

namespace internal {

// Packs a group into (a, b) by vertical stack, row, or the strip packer.
inline std::optional<BinLayout> PackGroup(const Instance& g, const Scalar& a,
                                          const Scalar& b) {
  BinLayout out;
  out.width = a;
  out.height = b;
  if (g.empty()) return out;
  if (MaxWidth(g) <= a && TotalHeight(g) <= b) {
    Scalar y = 0;
    for (const Item& it : g) {
      out.Place(it, 0, y);
      y += it.h;
    }
    return out;
  }
  if (MaxHeight(g) <= b && TotalWidth(g) <= a) {
    Scalar x = 0;
    for (const Item& it : g) {
      out.Place(it, x, 0);
      x += it.w;
    }
    return out;
  }
  if (SteinbergCondition(g, a, b)) return SteinbergRec(g, a, b);
  return std::nullopt;
}

inline bool GroupFits(const Instance& g, const Scalar& a, const Scalar& b) {
  if (g.empty()) return true;
  if (MaxWidth(g) <= a && TotalHeight(g) <= b) return true;
  if (MaxHeight(g) <= b && TotalWidth(g) <= a) return true;
  return SteinbergCondition(g, a, b);
}

// Unit-bin layout for Vol <= 1/2 with one big item and no other wide item.
inline std::optional<BinLayout> HalfAreaWithBig(const Instance& items,
                                                const Item& big) {
  const Scalar one = 1;
  const Scalar& wb = big.w;
  const Scalar& hb = big.h;
  Instance rest;
  for (const Item& it : items) {
    if (it.id != big.id) rest.push_back(it);
  }
  BinLayout out;

  // Big item at the bottom, rest above.
  if (MaxHeight(rest) <= one - hb && SteinbergCondition(rest, one, one - hb)) {
    out.Place(big, 0, 0);
    out.Embed(SteinbergRec(rest, one, one - hb), 0, hb);
    return out;
  }
  // Big item at the left, rest to its right.
  if (MaxWidth(rest) <= one - wb && SteinbergCondition(rest, one - wb, one)) {
    out.Place(big, 0, 0);
    out.Embed(SteinbergRec(rest, one - wb, one), wb, 0);
    return out;
  }
  // Row of tall items containing the big item, rest to the right.
  {
    const Instance tall = Sorted(
        Filter(items, [](const Item& it) { return 2 * it.h >= 1; }),
        ByHeightDesc);
    Scalar w = 0;
    bool has_big = false;
    for (size_t k = 0; k < tall.size(); ++k) {
      w += tall[k].w;
      if (w > one) break;
      if (tall[k].id == big.id) has_big = true;
      if (!has_big) continue;
      const Instance prefix(tall.begin(), tall.begin() + k + 1);
      const Instance others = Without(items, prefix);
      if (!SteinbergCondition(others, one - w, one)) continue;
      Scalar x = 0;
      for (const Item& it : prefix) {
        out.Place(it, x, 0);
        x += it.w;
      }
      if (!others.empty()) out.Embed(SteinbergRec(others, one - w, one), w, 0);
      return out;
    }
  }
  // Big item in the corner, rest split between the two free rectangles.
  struct Rect {
    Scalar w, h, x, y;
  };
  const Rect u1{wb, one - hb, 0, hb};
  const Rect u2{one - wb, one, wb, 0};
  const Rect t1{one - wb, hb, wb, 0};
  const Rect t2{one, one - hb, 0, hb};
  const std::pair<Rect, Rect> variants[] = {{u1, u2}, {t1, t2}};
  for (const auto& [r1, r2] : variants) {
    for (Order order : {Order::kArea, Order::kWidth, Order::kHeight}) {
      const Instance s = SortedBy(rest, order);
      for (bool first_is_r1 : {true, false}) {
        const Rect& ra = first_is_r1 ? r1 : r2;
        const Rect& rb = first_is_r1 ? r2 : r1;
        Instance ga, gb;
        bool all = true;
        for (const Item& it : s) {
          if (it.w <= ra.w && it.h <= ra.h &&
              GroupFits(Concat(ga, {it}), ra.w, ra.h)) {
            ga.push_back(it);
          } else if (it.w <= rb.w && it.h <= rb.h &&
                     GroupFits(Concat(gb, {it}), rb.w, rb.h)) {
            gb.push_back(it);
          } else {
            all = false;
            break;
          }
        }
        if (!all) continue;
        out.placements.clear();
        out.Place(big, 0, 0);
        out.Embed(*PackGroup(ga, ra.w, ra.h), ra.x, ra.y);
        out.Embed(*PackGroup(gb, rb.w, rb.h), rb.x, rb.y);
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace internal

// Unit-bin layout for a set with Vol <= 1/2 and no wide item except at most
// one big item.
inline BinLayout PackNoWideHalfArea(const Instance& items) {
  if (Vol(items) > Half()) {
    throw PreconditionViolated("total area " + ToString(Vol(items)) +
                               " exceeds 1/2");
  }
  const Instance wide = Filter(items, IsWide);
  if (wide.size() > 1 || (wide.size() == 1 && !IsBig(wide[0]))) {
    throw PreconditionViolated("set has a wide item that is not a lone big item");
  }
  if (SteinbergCondition(items, 1, 1)) return internal::SteinbergRec(items, 1, 1);
  if (auto r = internal::HalfAreaWithBig(items, wide[0])) return *r;
  throw InternalError("half-area packer found no layout for " +
                      std::to_string(items.size()) + " items");
}

// Transposed variant: no high item except at most one big item.
inline BinLayout PackNoHighHalfArea(const Instance& items) {
  return Transposed(PackNoWideHalfArea(Transposed(items)));
}

}  // namespace pack2d

#endif  // PACK2D_STEINBERG_HPP_
