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

// Two-bin packing of instances that fit into a single bin: the small
// delta-load branch, the large high-width branch and the three-case branch
// for small high width.

#ifndef PACK2D_OPT1_HPP_
#define PACK2D_OPT1_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pack2d/classify.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/knapsack.hpp"
#include "pack2d/scalar.hpp"
#include "pack2d/steinberg.hpp"

namespace pack2d {

enum class Opt1Branch {
  kSmallHeightWidth,   // feasible delta on the width axis
  kSmallHeightHeight,  // feasible delta on the height axis
  kLargeW,
  kSmallWCase1,
  kSmallWCase2,
  kSmallWCase3,
};

inline const char* BranchName(Opt1Branch b) {
  switch (b) {
    case Opt1Branch::kSmallHeightWidth:
      return "small-height/width";
    case Opt1Branch::kSmallHeightHeight:
      return "small-height/height";
    case Opt1Branch::kLargeW:
      return "large-w";
    case Opt1Branch::kSmallWCase1:
      return "small-w/case-1";
    case Opt1Branch::kSmallWCase2:
      return "small-w/case-2";
    case Opt1Branch::kSmallWCase3:
      return "small-w/case-3";
  }
  return "?";
}

struct Opt1Result {
  Packing packing;
  Opt1Branch branch = Opt1Branch::kSmallHeightWidth;
  // False when a knapsack step above the exact limit returned an
  // uncertified best-effort selection.
  bool knapsack_certified = true;
  // Case 3 of the small high-width branch: capacities and final loads.
  Scalar c1, c2, s1_load, s2_load;
};

struct WideHighResult {
  BinLayout layout;
  Instance h_prime;
};

namespace internal {

// W by non-increasing width, aligned with the bottom right corner.
inline void StackBottomRight(BinLayout& bin, const Instance& items) {
  Scalar y = 0;
  for (const Item& it : Sorted(items, ByWidthDesc)) {
    bin.Place(it, 1 - it.w, y);
    y += it.h;
  }
}

// H by non-increasing height, aligned with the top left corner.
inline void StackTopLeft(BinLayout& bin, const Instance& items) {
  Scalar x = 0;
  for (const Item& it : Sorted(items, ByHeightDesc)) {
    bin.Place(it, x, 1 - it.h);
    x += it.w;
  }
}

// Side by side from the bottom left corner, by non-increasing height.
inline void StackLeft(BinLayout& bin, const Instance& items) {
  Scalar x = 0;
  for (const Item& it : Sorted(items, ByHeightDesc)) {
    bin.Place(it, x, 0);
    x += it.w;
  }
}

// On top of each other from the bottom left corner, by non-increasing width.
inline void StackBottom(BinLayout& bin, const Instance& items) {
  Scalar y = 0;
  for (const Item& it : Sorted(items, ByWidthDesc)) {
    bin.Place(it, 0, y);
    y += it.h;
  }
}

inline void RequireValid(const BinLayout& bin, const char* what) {
  const ValidationReport report = ValidateBin(bin);
  if (!report.ok()) {
    throw GuessFailed(std::string(what) + ": " + report.ToString());
  }
}

inline Packing TwoBins(BinLayout first, BinLayout second) {
  Packing p;
  p.bins.push_back(std::move(first));
  p.bins.push_back(std::move(second));
  p.Compact();
  return p;
}

inline Opt1Result Transposed(Opt1Result r) {
  r.packing = pack2d::Transposed(r.packing);
  return r;
}

}  // namespace internal

// ---------------------------------------------------------------------------
// Stack plus small items.

// W stacked at the bottom right; T packed above it by the strip packer.
inline BinLayout PackStackPlusSmall(const Instance& wide, const Instance& t) {
  const Scalar hw = TotalHeight(wide);
  if (hw > 1) throw PreconditionViolated("wide stack taller than the bin");
  for (const Item& it : t) {
    if (it.w > Half() || it.h > 1 - hw) {
      throw PreconditionViolated("item " + std::to_string(it.id) +
                                 " does not fit above the wide stack");
    }
  }
  if (Vol(t) > Half() - hw / 2) {
    throw PreconditionViolated("small items exceed 1/2 - h(W)/2");
  }
  BinLayout bin;
  internal::StackBottomRight(bin, wide);
  if (!t.empty()) bin.Embed(SteinbergPack(t, 1, 1 - hw), 0, hw);
  return bin;
}

// H stacked at the top left; T packed to its right by the strip packer.
inline BinLayout PackHighStackPlusSmall(const Instance& high,
                                        const Instance& t) {
  const Scalar wh = TotalWidth(high);
  if (wh > Half()) throw PreconditionViolated("high stack wider than 1/2");
  for (const Item& it : t) {
    if (it.w > Half() || it.h > Half()) {
      throw PreconditionViolated("item " + std::to_string(it.id) +
                                 " is not small");
    }
  }
  if (Vol(t) > Half() - wh / 2) {
    throw PreconditionViolated("small items exceed 1/2 - w(H)/2");
  }
  BinLayout bin;
  internal::StackTopLeft(bin, high);
  if (!t.empty()) bin.Embed(SteinbergPack(t, 1 - wh, 1), wh, 0);
  return bin;
}

// ---------------------------------------------------------------------------
// Small delta load.

// Bin 1: H_gamma stacked at the left, a maximum-area selection of the rest
// to its right. Bin 2: leftover delta-wide items stacked at the bottom, the
// remaining leftovers above them by the strip packer.
inline Opt1Result PackSmallHeight(const Instance& items, const Scalar& delta,
                                  const Scalar& eps,
                                  const ExactOptions& opts = {}) {
  CheckOpt1Epsilon(eps);
  if (delta <= eps || delta > Half()) {
    throw PreconditionViolated("delta outside (eps, 1/2]");
  }
  const Scalar gamma = Gamma(delta, eps);
  if (DeltaLoad(items, delta, Axis::kWidth) > gamma) {
    throw PreconditionViolated("h(W_delta) exceeds gamma");
  }
  Opt1Result out;
  out.branch = Opt1Branch::kSmallHeightWidth;
  const Instance h_gamma =
      Filter(items, [&](const Item& it) { return it.h > 1 - gamma; });
  const Scalar width = TotalWidth(h_gamma);
  if (width > 1) throw GuessFailed("w(H_gamma) exceeds 1");
  const Instance rest = Without(items, h_gamma);

  BinLayout first;
  internal::StackLeft(first, h_gamma);
  Instance selected;
  if (width < 1 && !rest.empty()) {
    KnapsackResult pick;
    try {
      pick = MaxAreaPack(rest, 1 - width, 1, eps, opts);
    } catch (const KnapsackTooLarge& e) {
      pick = e.best_effort();
      out.knapsack_certified = false;
    }
    first.Embed(pick.layout, width, 0);
    selected = pick.selected;
  }

  const Instance t = Without(rest, selected);
  const Instance t_wide = DeltaWide(t, delta);
  const Instance t_rest = Without(t, t_wide);
  const Scalar h_prime = TotalHeight(t_wide);
  if (h_prime > gamma) throw GuessFailed("leftover wide stack exceeds gamma");
  BinLayout second;
  internal::StackBottom(second, t_wide);
  if (!t_rest.empty()) {
    if (!SteinbergCondition(t_rest, 1, 1 - h_prime)) {
      throw GuessFailed("leftover items violate the strip condition");
    }
    second.Embed(SteinbergPack(t_rest, 1, 1 - h_prime), 0, h_prime);
  }
  internal::RequireValid(first, "small-height bin 1");
  internal::RequireValid(second, "small-height bin 2");
  out.packing = internal::TwoBins(std::move(first), std::move(second));
  return out;
}

// ---------------------------------------------------------------------------
// Wide items with part of the high items.

// W at the bottom right; a subset H' of H stacked at the top left with
// w(H') > w(H)/2 - eps. Subsets of the items of width >= eps are tried in
// decreasing total width; narrower items are inserted greedily by
// non-increasing height.
inline WideHighResult PackWideHigh(const Instance& wide, const Instance& high,
                                   const Scalar& eps) {
  if (TotalHeight(wide) > 1) throw GuessFailed("h(W) exceeds 1");
  const Instance coarse =
      Filter(high, [&](const Item& it) { return it.w >= eps; });
  const Instance thin = Sorted(
      Filter(high, [&](const Item& it) { return it.w < eps; }), ByHeightDesc);
  if (coarse.size() > 20) {
    throw InstanceTooLarge(std::to_string(coarse.size()) +
                           " high items of width >= eps");
  }
  const Scalar target = TotalWidth(high) / 2 - eps;
  const Scalar thin_width = TotalWidth(thin);

  std::vector<std::pair<Scalar, uint32_t>> masks;
  for (uint32_t m = 0; m < (1u << coarse.size()); ++m) {
    Scalar w = 0;
    for (size_t i = 0; i < coarse.size(); ++i) {
      if (m >> i & 1) w += coarse[i].w;
    }
    masks.push_back({w, m});
  }
  std::stable_sort(masks.begin(), masks.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  auto build = [&](const Instance& stack) {
    BinLayout bin;
    internal::StackBottomRight(bin, wide);
    internal::StackTopLeft(bin, stack);
    return bin;
  };
  for (const auto& [width, mask] : masks) {
    if (width + thin_width <= target) break;
    Instance stack;
    for (size_t i = 0; i < coarse.size(); ++i) {
      if (mask >> i & 1) stack.push_back(coarse[i]);
    }
    if (TotalWidth(stack) > 1 || !ValidateBin(build(stack)).ok()) continue;
    for (const Item& it : thin) {
      Instance trial = stack;
      trial.push_back(it);
      if (TotalWidth(trial) <= 1 && ValidateBin(build(trial)).ok()) {
        stack = std::move(trial);
      }
    }
    if (TotalWidth(stack) > target) return {build(stack), stack};
  }
  throw GuessFailed("no high subset reaches w(H)/2 - eps");
}

// ---------------------------------------------------------------------------
// Area-guarantee branches. W is the wide set including a big item; H the
// remaining high items.

inline Opt1Result PackLargeW(const Instance& items, const Scalar& eps) {
  CheckOpt1Epsilon(eps);
  const ItemClasses c = Classify(items);
  const Instance wide = c.Wide();
  const Instance& high = c.high_only;
  if (TotalWidth(high) <= Half() || TotalHeight(wide) < TotalWidth(high)) {
    throw PreconditionViolated("large-w branch needs h(W) >= w(H) > 1/2");
  }
  WideHighResult first = PackWideHigh(wide, high, eps);
  const Instance rest_high = Without(high, first.h_prime);
  const Scalar wr = TotalWidth(rest_high);
  if (wr > Half()) throw GuessFailed("w(H \\ H') exceeds 1/2");
  BinLayout second;
  internal::StackTopLeft(second, rest_high);
  if (!c.small.empty()) {
    if (!SteinbergCondition(c.small, 1 - wr, 1)) {
      throw GuessFailed("small items violate the strip condition");
    }
    second.Embed(SteinbergPack(c.small, 1 - wr, 1), wr, 0);
  }
  internal::RequireValid(first.layout, "large-w bin 1");
  internal::RequireValid(second, "large-w bin 2");
  Opt1Result out;
  out.branch = Opt1Branch::kLargeW;
  out.packing = internal::TwoBins(std::move(first.layout), std::move(second));
  return out;
}

// Greatest width in the wide stack above height 1/2, or 1/2 for a short
// stack.
inline Scalar Omega(const Instance& wide) {
  if (TotalHeight(wide) <= Half()) return Half();
  Scalar y = 0, best = Half();
  for (const Item& it : Sorted(wide, ByWidthDesc)) {
    y += it.h;
    if (y > Half() && it.w > best) best = it.w;
  }
  return best;
}

inline Opt1Result PackSmallW(const Instance& items, const Scalar& eps) {
  CheckOpt1Epsilon(eps);
  const ItemClasses c = Classify(items);
  const Instance wide = c.Wide();
  const Instance& high = c.high_only;
  const Scalar hw = TotalHeight(wide);
  const Scalar wh = TotalWidth(high);
  if (wh > Half() || hw < wh) {
    throw PreconditionViolated("small-w branch needs h(W) >= w(H), w(H) <= 1/2");
  }
  if (hw > 1) throw GuessFailed("h(W) exceeds 1");
  const Scalar omega = Omega(wide);
  const Instance h_tilde = Filter(
      c.small, [&](const Item& it) { return it.h > 1 - hw && it.h <= Half(); });
  const Instance others = Sorted(Without(c.small, h_tilde), ByAreaDesc);

  Opt1Result out;
  BinLayout first;
  internal::StackBottomRight(first, wide);
  auto finish = [&](BinLayout bin1, const Instance& rest) {
    BinLayout second;
    try {
      second = PackHighStackPlusSmall(high, rest);
    } catch (const PreconditionViolated& e) {
      throw GuessFailed(std::string("second bin: ") + e.what());
    }
    internal::RequireValid(bin1, "small-w bin 1");
    internal::RequireValid(second, "small-w bin 2");
    out.packing = internal::TwoBins(std::move(bin1), std::move(second));
    return out;
  };

  if (TotalWidth(h_tilde) >= (1 - omega) / 2) {
    out.branch = Opt1Branch::kSmallWCase1;
    const Scalar bar = (1 - omega) / 2;
    const Instance by_width = Sorted(h_tilde, ByWidthDesc);
    Instance placed;
    if (!by_width.empty() && by_width.front().w > bar) {
      const Item& it = by_width.front();
      first.Place(it, 0, 1 - it.h);
      placed.push_back(it);
    } else {
      Scalar x = 0;
      for (const Item& it : Sorted(h_tilde, ByHeightDesc)) {
        BinLayout trial = first;
        trial.Place(it, x, 1 - it.h);
        if (!ValidateBin(trial).ok()) break;
        first = std::move(trial);
        placed.push_back(it);
        x += it.w;
      }
    }
    return finish(std::move(first), Without(c.small, placed));
  }

  const Scalar area_pair =
      (others.size() > 0 ? others[0].Area() : Scalar(0)) +
      (others.size() > 1 ? others[1].Area() : Scalar(0));
  if (area_pair >= Half() - 2 * Xi() - hw / 2) {
    out.branch = Opt1Branch::kSmallWCase2;
    Instance placed;
    if (others.size() > 0) {
      first.Place(others[0], 0, 1 - others[0].h);
      placed.push_back(others[0]);
    }
    if (others.size() > 1) {
      first.Place(others[1], 1 - others[1].w, 1 - others[1].h);
      placed.push_back(others[1]);
    }
    return finish(std::move(first), Without(c.small, placed));
  }

  out.branch = Opt1Branch::kSmallWCase3;
  out.c1 = Half() - hw / 2;
  out.c2 = Half() - wh / 2;
  Instance s1, s2 = h_tilde;
  out.s1_load = 0;
  out.s2_load = Vol(h_tilde);
  size_t start = 0;
  if (!others.empty()) {
    s1.push_back(others[0]);
    out.s1_load = others[0].Area();
    start = 1;
  }
  bool violated = false;
  for (size_t i = start; i < others.size(); ++i) {
    const Item& it = others[i];
    const bool to_first = out.c1 - out.s1_load >= out.c2 - out.s2_load;
    Scalar& load = to_first ? out.s1_load : out.s2_load;
    load += it.Area();
    (to_first ? s1 : s2).push_back(it);
    const Scalar& cap = to_first ? out.c1 : out.c2;
    if (!violated && load > cap) {
      violated = true;
      if (it.Area() >= 2 * Xi()) {
        throw InternalError("violating item has area >= 0.15");
      }
    }
  }
  if (out.s1_load > out.c1 || out.s2_load > out.c2) {
    throw GuessFailed("case 3 partition exceeds a capacity");
  }
  BinLayout bin1;
  try {
    bin1 = PackStackPlusSmall(wide, s1);
  } catch (const PreconditionViolated& e) {
    throw GuessFailed(std::string("first bin: ") + e.what());
  }
  return finish(std::move(bin1), s2);
}

// ---------------------------------------------------------------------------
// Dispatcher.

// Packs an instance that fits into one bin into at most two bins. Throws
// GuessFailed when the selected branch cannot complete, which signals that
// the instance does not fit into one bin.
inline Opt1Result PackOpt1(const Instance& items, const Scalar& eps,
                           const ExactOptions& opts = {}) {
  CheckOpt1Epsilon(eps);
  Opt1Result out;
  if (items.empty()) return out;
  if (auto delta = FindFeasibleDelta(items, eps, Axis::kWidth)) {
    out = PackSmallHeight(items, *delta, eps, opts);
  } else if (auto delta_h = FindFeasibleDelta(items, eps, Axis::kHeight)) {
    out = internal::Transposed(
        PackSmallHeight(Transposed(items), *delta_h, eps, opts));
    out.branch = Opt1Branch::kSmallHeightHeight;
  } else {
    const ItemClasses c = Classify(items);
    const bool flip = TotalHeight(c.Wide()) < TotalWidth(c.High());
    const Instance oriented = flip ? Transposed(items) : items;
    const ItemClasses o = Classify(oriented);
    out = TotalWidth(o.high_only) > Half() ? PackLargeW(oriented, eps)
                                           : PackSmallW(oriented, eps);
    if (flip) out = internal::Transposed(std::move(out));
  }
  const ValidationReport report = ValidatePacking(out.packing, items);
  if (!report.ok() || out.packing.NumBins() > 2) {
    throw GuessFailed("two-bin packing did not validate: " + report.ToString());
  }
  return out;
}

}  // namespace pack2d

#endif  // PACK2D_OPT1_HPP_
