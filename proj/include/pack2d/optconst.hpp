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

// Packing of instances whose optimum is a small constant l into 2l bins:
// guessed assignment of the large items, separation of wide and high items,
// and the four fill cases.

#ifndef PACK2D_OPTCONST_HPP_
#define PACK2D_OPTCONST_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pack2d/classify.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/knapsack.hpp"
#include "pack2d/opt1.hpp"
#include "pack2d/scalar.hpp"
#include "pack2d/steinberg.hpp"

namespace pack2d {

// eps = 1 / (40 k^3 + 2).
inline Scalar OptConstEpsilon(int k) {
  if (k < 2) throw PreconditionViolated("k must be at least 2");
  return Rational(1, 40L * k * k * k + 2);
}

inline bool IsLarge(const Item& it, const Scalar& eps) {
  return it.Area() > eps;
}

struct OptConstOptions {
  ExactOptions exact;
  int enumeration_limit = 12;
};

// Item sets of the 2l bins after the first four steps. Index 0 is bin 1.
struct StepState {
  BinLayout b1;
  std::vector<Instance> b;
  std::vector<Instance> c;
  Instance rest;
  std::vector<std::optional<BinLayout>> b_fixed;
  std::vector<std::optional<BinLayout>> c_fixed;
  bool knapsack_certified = true;

  int ell() const { return static_cast<int>(b.size()); }
};

struct OptConstResult {
  Packing packing;
  int ell = 0;
  int dispatch_case = 0;  // 1..4 by the fill of B_l and C_l
  std::string route;
  int64_t assignments_tried = 0;
  bool knapsack_certified = true;
};

namespace internal {

// Vol <= 1/2 and no wide item, or no high item, apart from one big item.
inline bool HalfAreaPackable(const Instance& items) {
  if (Vol(items) > Half()) return false;
  int wide = 0, high = 0, big = 0;
  for (const Item& it : items) {
    wide += IsWide(it) && !IsBig(it);
    high += IsHigh(it) && !IsBig(it);
    big += IsBig(it);
  }
  return big <= 1 && (wide == 0 || high == 0);
}

inline bool AllHigh(const Instance& items) {
  return std::all_of(items.begin(), items.end(), IsHigh);
}

inline bool AllWide(const Instance& items) {
  return std::all_of(items.begin(), items.end(), IsWide);
}

// Layout of a unit-bin item set by the first applicable construction:
// stack, half-area packer, strip packer, exact search.
class Realizer {
 public:
  explicit Realizer(const ExactOptions& opts) : opts_(opts) {}

  BinLayout operator()(const Instance& items) {
    BinLayout bin;
    if (items.empty()) return bin;
    if (AllHigh(items) && TotalWidth(items) <= 1) {
      StackLeft(bin, items);
      return bin;
    }
    if (AllWide(items) && TotalHeight(items) <= 1) {
      StackBottom(bin, items);
      return bin;
    }
    if (HalfAreaPackable(items)) {
      const bool no_wide = std::none_of(
          items.begin(), items.end(),
          [](const Item& it) { return IsWide(it) && !IsBig(it); });
      return no_wide ? PackNoWideHalfArea(items) : PackNoHighHalfArea(items);
    }
    if (SteinbergCondition(items, 1, 1)) return SteinbergPack(items, 1, 1);
    const std::set<int> key = IdSet(items);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::optional<BinLayout> layout;
      if (static_cast<int>(items.size()) <= opts_.exact_limit) {
        try {
          layout = ExactPackSingleRegion(items, 1, 1, opts_);
        } catch (const InstanceTooLarge&) {
        }
      }
      it = cache_.emplace(key, std::move(layout)).first;
    }
    if (!it->second) {
      throw GuessFailed("no layout for a bin of " +
                        std::to_string(items.size()) + " items");
    }
    return *it->second;
  }

 private:
  ExactOptions opts_;
  std::map<std::set<int>, std::optional<BinLayout>> cache_;
};

inline Instance HighOf(const Instance& items) { return Filter(items, IsHigh); }
inline Instance WideOf(const Instance& items) { return Filter(items, IsWide); }

// Next-fit of `items` (already ordered) over the bins listed in `order`.
// `fits(bin, item)` decides; unplaced items are returned.
inline Instance NextFit(
    const Instance& items, std::vector<Instance*> order,
    const std::function<bool(const Instance&, const Item&)>& fits) {
  Instance left;
  size_t k = 0;
  for (const Item& it : items) {
    while (k < order.size() && !fits(*order[k], it)) ++k;
    if (k < order.size()) {
      order[k]->push_back(it);
    } else {
      left.push_back(it);
    }
  }
  return left;
}

// First-fit of `items` over `order` keeping each bin half-area packable.
inline Instance FirstFitHalfArea(const Instance& items,
                                 const std::vector<Instance*>& order) {
  Instance left;
  for (const Item& it : items) {
    bool placed = false;
    for (Instance* bin : order) {
      Instance trial = *bin;
      trial.push_back(it);
      if (HalfAreaPackable(trial)) {
        *bin = std::move(trial);
        placed = true;
        break;
      }
    }
    if (!placed) left.push_back(it);
  }
  return left;
}

inline bool AreaFits(const Instance& bin, const Item& it) {
  return Vol(bin) + it.Area() <= Half();
}

inline bool WidthFits(const Instance& bin, const Item& it) {
  return TotalWidth(bin) + it.w <= 1;
}

// Everything the steps after the knapsack need, in the current frame.
struct ConstContext {
  int ell = 0;
  Scalar eps;
  std::vector<Instance> parts;  // L_1..L_l
  Instance tiny_rest;           // tiny items outside B_1
  BinLayout b1;
  bool knapsack_certified = true;
  ExactOptions opts;
  Instance all;  // the instance, for validation
};

inline ConstContext Transposed(const ConstContext& ctx) {
  ConstContext t = ctx;
  for (Instance& p : t.parts) p = pack2d::Transposed(p);
  t.tiny_rest = pack2d::Transposed(ctx.tiny_rest);
  t.b1 = pack2d::Transposed(ctx.b1);
  t.all = pack2d::Transposed(ctx.all);
  return t;
}

inline StepState Transposed(const StepState& s) {
  StepState t;
  t.b1 = pack2d::Transposed(s.b1);
  t.knapsack_certified = s.knapsack_certified;
  const int ell = s.ell();
  t.b.resize(ell);
  t.c.resize(ell);
  t.b_fixed.resize(ell);
  t.c_fixed.resize(ell);
  for (int i = 0; i < ell; ++i) {
    t.b[i] = pack2d::Transposed(s.c[i]);
    t.c[i] = pack2d::Transposed(s.b[i]);
    if (s.c_fixed[i]) t.b_fixed[i] = pack2d::Transposed(*s.c_fixed[i]);
    if (s.b_fixed[i]) t.c_fixed[i] = pack2d::Transposed(*s.b_fixed[i]);
  }
  t.rest = pack2d::Transposed(s.rest);
  return t;
}

// Steps three and four. With `whole` >= 1 the large items of that bin stay
// together in B_whole, wide tiny items skip it, high tiny items continue into
// C_1, and the remaining tiny items are spread over B_2..B_l by area.
inline StepState Separate(const ConstContext& ctx, int whole = -1) {
  const int ell = ctx.ell;
  StepState s;
  s.b1 = ctx.b1;
  s.knapsack_certified = ctx.knapsack_certified;
  s.b.assign(ell, {});
  s.c.assign(ell, {});
  s.b_fixed.assign(ell, std::nullopt);
  s.c_fixed.assign(ell, std::nullopt);
  s.b[0] = ctx.b1.Items();
  for (int i = 1; i < ell; ++i) {
    if (i == whole) {
      s.b[i] = ctx.parts[i];
      auto layout = ExactPackSingleRegion(ctx.parts[i], 1, 1, ctx.opts);
      if (!layout) throw GuessFailed("guessed bin does not fit");
      s.b_fixed[i] = std::move(layout);
      continue;
    }
    s.b[i] = Filter(ctx.parts[i], [](const Item& it) { return !IsHigh(it); });
    s.c[i] = HighOf(ctx.parts[i]);
  }
  std::vector<Instance*> b_order, c_order;
  for (int i = 1; i < ell; ++i) {
    if (i != whole) b_order.push_back(&s.b[i]);
    c_order.push_back(&s.c[i]);
  }
  if (whole >= 1) c_order.push_back(&s.c[0]);
  const Instance wide = Sorted(WideOf(ctx.tiny_rest), ByWidthDesc);
  const Instance high = Sorted(HighOf(ctx.tiny_rest), ByHeightDesc);
  Instance rest = Filter(ctx.tiny_rest, [](const Item& it) {
    return !IsWide(it) && !IsHigh(it);
  });
  rest = Concat(rest, NextFit(wide, b_order, AreaFits));
  rest = Concat(rest, NextFit(high, c_order, WidthFits));
  if (whole >= 1) rest = FirstFitHalfArea(Sorted(rest, ByAreaDesc), b_order);
  s.rest = Sorted(rest, ById);
  return s;
}

struct CaseOutcome {
  Packing packing;
  std::string route;
};

class CaseSolver {
 public:
  explicit CaseSolver(const ConstContext& ctx)
      : ctx_(ctx), realize_(ctx.opts) {}

  CaseOutcome Dispatch(StepState s, bool allow_case4 = true) {
    const int d = CaseOf(s);
    switch (d) {
      case 1:
        return Case1(std::move(s), "case-1");
      case 2:
        return Case2(std::move(s));
      case 3:
        return Case3(std::move(s));
      default:
        if (!allow_case4) throw GuessFailed("case 4 after rotation");
        return Case4(std::move(s));
    }
  }

  int CaseOf(const StepState& s) const {
    const int last = s.ell() - 1;
    const bool b_full = Vol(s.b[last]) >= Half() - ctx_.eps;
    const bool c_full = Vol(s.c[last]) >= Half() - ctx_.eps;
    if (!b_full && !c_full) return 1;
    if (b_full && c_full) return 2;
    return b_full ? 4 : 3;
  }

  // Validated packing of every bin in the state.
  Packing Finish(StepState& s) {
    if (!s.rest.empty()) {
      throw GuessFailed(std::to_string(s.rest.size()) +
                        " tiny items left unpacked");
    }
    Packing p;
    p.bins.push_back(s.b1);
    for (int i = 1; i < s.ell(); ++i) {
      p.bins.push_back(s.b_fixed[i] ? *s.b_fixed[i] : realize_(s.b[i]));
    }
    for (int i = 0; i < s.ell(); ++i) {
      p.bins.push_back(s.c_fixed[i] ? *s.c_fixed[i] : realize_(s.c[i]));
    }
    const ValidationReport report = ValidatePacking(p, ctx_.all);
    if (!report.ok()) {
      throw GuessFailed("packing did not validate: " + report.ToString());
    }
    p.Compact();
    return p;
  }

  // Remaining items over every bin except B_1 with area cap 1/2.
  CaseOutcome Case1(StepState s, std::string route) {
    std::vector<Instance*> order;
    if (!s.c_fixed[0]) order.push_back(&s.c[0]);
    for (int i = 1; i < s.ell(); ++i) {
      if (!s.b_fixed[i]) order.push_back(&s.b[i]);
      if (!s.c_fixed[i]) order.push_back(&s.c[i]);
    }
    s.rest = FirstFitHalfArea(Sorted(s.rest, ByAreaDesc), order);
    return {Finish(s), std::move(route)};
  }

  CaseOutcome Case2(StepState s, const std::string& prefix = "") {
    const int ell = s.ell();
    const int last = ell - 1;
    const Scalar& eps = ctx_.eps;
    if (Vol(s.c[last]) > Half() + (2 * ell - 2) * eps) {
      return {Finish(s), prefix + "case-2/full"};
    }
    const Instance h_hat = Filter(
        s.c[last], [](const Item& it) { return it.h <= Rational(3, 4); });
    if (TotalWidth(h_hat) >= (4 * ell - 3) * eps) {
      if (!s.c[0].empty()) throw GuessFailed("C_1 is not empty");
      s.c[last] = Without(s.c[last], h_hat);
      const Instance wide = WideOf(s.rest);
      const Instance others = Without(s.rest, wide);
      Instance merged = Concat(s.c[last], others);
      if (!HalfAreaPackable(merged)) {
        throw GuessFailed("leftovers do not fit with C_l");
      }
      s.c[last] = std::move(merged);
      BinLayout c1;
      StackLeft(c1, h_hat);
      const Scalar base = MaxHeight(h_hat);
      if (base + TotalHeight(wide) > 1) {
        throw GuessFailed("wide leftovers do not fit above the stack");
      }
      Scalar y = base;
      for (const Item& it : Sorted(wide, ByWidthDesc)) {
        c1.Place(it, 0, y);
        y += it.h;
      }
      s.c[0] = Concat(h_hat, wide);
      s.c_fixed[0] = std::move(c1);
      s.rest.clear();
      return {Finish(s), prefix + "case-2/h-hat"};
    }
    const Instance pool = Concat(s.c[last], HighOf(s.rest));
    Scalar tall = 0;
    for (const Item& it : pool) {
      if (it.h > Rational(3, 4)) tall += it.w;
    }
    if (tall > Rational(2, 3) + (Rational(16, 3) * ell - 4) * eps) {
      throw GuessFailed("tall high items exceed the width bound");
    }
    Instance stack, left = Without(s.rest, pool);
    for (const Item& it : Sorted(pool, ByHeightDesc)) {
      if (TotalWidth(stack) + it.w <= 1) {
        stack.push_back(it);
      } else {
        left.push_back(it);
      }
    }
    s.c[last] = std::move(stack);
    if (!s.c[0].empty()) throw GuessFailed("C_1 is not empty");
    if (!SteinbergCondition(left, 1, 1)) {
      throw GuessFailed("leftovers violate the strip condition in C_1");
    }
    s.c[0] = left;
    s.c_fixed[0] = SteinbergPack(left, 1, 1);
    s.rest.clear();
    return {Finish(s), prefix + "case-2/restack"};
  }

  CaseOutcome Case3(StepState s, const std::string& prefix = "") {
    if (!WideOf(s.rest).empty()) {
      throw GuessFailed("wide leftovers although B_l is not full");
    }
    const Instance high = HighOf(s.rest);
    if (TotalWidth(high) <= 1) {
      s.c[0] = Concat(s.c[0], high);
      s.rest = Without(s.rest, high);
      return Case1(std::move(s), prefix + "case-3/c1-stack");
    }
    const int ell = s.ell();
    const Scalar& eps = ctx_.eps;
    for (int j = 1; j < ell; ++j) {
      if (TotalWidth(HighOf(ctx_.parts[j])) > 10 * ell * eps) {
        return Case3a(Separate(ctx_, j), prefix + "case-3a");
      }
    }
    return Case3b(std::move(s), prefix + "case-3b");
  }

  // C_1 holds its high stack at the bottom left, R3 above it, R1 along the
  // top and R2 in the bottom right corner.
  CaseOutcome Case3a(StepState s, std::string route) {
    if (s.rest.empty()) return {Finish(s), std::move(route)};
    const Scalar le = s.ell() * ctx_.eps;
    const Instance& stack = s.c[0];
    const Scalar h_prime = MaxHeight(stack);
    if (h_prime > Half() + 2 * le) {
      throw GuessFailed("C_1 stack too tall for the three regions");
    }
    if (TotalWidth(stack) > 1 - 8 * le) {
      throw GuessFailed("C_1 stack too wide for the three regions");
    }
    const Instance r1 = WideOf(s.rest);
    const Instance r2 = Filter(s.rest, [&](const Item& it) {
      return !IsWide(it) && it.h > Half() - 6 * le;
    });
    const Instance r3 = Without(Without(s.rest, r1), r2);
    if (TotalHeight(r1) > 4 * le || TotalWidth(r2) > 8 * le ||
        MaxHeight(r2) > 1 - 4 * le) {
      throw GuessFailed("leftovers exceed their regions");
    }
    const Scalar r3_w = 1 - 8 * le, r3_h = Half() - 6 * le;
    if (!SteinbergCondition(r3, r3_w, r3_h)) {
      throw GuessFailed("leftovers violate the strip condition in R3");
    }
    BinLayout c1;
    StackLeft(c1, stack);
    Scalar y = 1 - 4 * le;
    for (const Item& it : Sorted(r1, ByWidthDesc)) {
      c1.Place(it, 0, y);
      y += it.h;
    }
    Scalar x = 1 - 8 * le;
    for (const Item& it : Sorted(r2, ByHeightDesc)) {
      c1.Place(it, x, 0);
      x += it.w;
    }
    if (!r3.empty()) c1.Embed(SteinbergPack(r3, r3_w, r3_h), 0, h_prime);
    s.c[0] = Concat(stack, s.rest);
    s.c_fixed[0] = std::move(c1);
    s.rest.clear();
    return {Finish(s), std::move(route)};
  }

  // All high items outside B_1 are thin: restack them over C_1..C_l and put
  // the leftovers into some B_i with the strip packer.
  CaseOutcome Case3b(StepState s, std::string route) {
    const int ell = s.ell();
    Instance high = HighOf(s.rest);
    for (int i = 0; i < ell; ++i) {
      if (s.c_fixed[i]) throw GuessFailed("fixed C bin in the thin case");
      high = Concat(high, s.c[i]);
      s.c[i].clear();
    }
    s.rest = Without(s.rest, high);
    std::vector<Instance*> order;
    for (int i = 0; i < ell; ++i) order.push_back(&s.c[i]);
    const Instance left =
        NextFit(Sorted(high, ByHeightDesc), order, WidthFits);
    s.rest = Concat(s.rest, left);
    if (s.rest.empty()) return {Finish(s), std::move(route)};
    const Scalar h_prime =
        s.c[ell - 1].empty() ? Half() : MinHeightOf(s.c[ell - 1]);
    const Scalar bound = 1 - h_prime - 10 * ell * ell * ctx_.eps;
    for (int i = 1; i < ell; ++i) {
      if (s.b_fixed[i] || Vol(s.b[i]) > bound) continue;
      Instance merged = Concat(s.b[i], s.rest);
      if (!SteinbergCondition(merged, 1, 1)) continue;
      s.b_fixed[i] = SteinbergPack(merged, 1, 1);
      s.b[i] = std::move(merged);
      s.rest.clear();
      return {Finish(s), std::move(route)};
    }
    throw GuessFailed("no B bin can take the thin-case leftovers");
  }

  CaseOutcome Case4(StepState s) {
    if (!HighOf(s.rest).empty()) {
      throw GuessFailed("high leftovers although C_l is not full");
    }
    if (WideOf(s.rest).empty()) return Case1(std::move(s), "case-4/no-wide");
    const int ell = s.ell();
    const Scalar& eps = ctx_.eps;
    // Tiny high items leave C_2..C_l and are redistributed after every move.
    Instance tiny_high;
    for (int i = 1; i < ell; ++i) {
      for (const Item& it : s.c[i]) {
        if (!IsLarge(it, eps)) tiny_high.push_back(it);
      }
    }
    tiny_high = Sorted(tiny_high, ByHeightDesc);
    StepState base = s;
    for (int i = 1; i < ell; ++i) {
      base.c[i] = Filter(s.c[i], [&](const Item& it) { return IsLarge(it, eps); });
    }
    auto redistribute = [&](StepState& st) {
      std::vector<Instance*> order;
      for (int i = 1; i < ell; ++i) order.push_back(&st.c[i]);
      return NextFit(tiny_high, order, AreaFits);
    };
    auto refill = [&](StepState& st, int i) {
      Instance wide = Sorted(WideOf(st.rest), ByWidthDesc);
      for (const Item& it : wide) {
        if (Vol(st.b[i]) >= Half() - eps) break;
        st.b[i].push_back(it);
        st.rest = Without(st.rest, {it});
      }
    };
    std::optional<StepState> filled;
    for (;;) {
      // Largest movable small large item over B_2..B_l.
      int bin = -1;
      std::optional<Item> r;
      for (int i = 1; i < ell; ++i) {
        for (const Item& it : base.b[i]) {
          if (!IsLarge(it, eps) || !IsSmall(it)) continue;
          if (!r || ByAreaDesc(it, *r)) {
            r = it;
            bin = i;
          }
        }
      }
      if (!r) break;
      StepState trial = base;
      trial.b[bin] = Without(trial.b[bin], {*r});
      trial.c[bin].push_back(*r);
      refill(trial, bin);
      StepState with_high = trial;
      const Instance stranded = redistribute(with_high);
      if (!stranded.empty()) {
        // r stops the process: it goes to C_1 instead.
        StepState st = base;
        st.b[bin] = Without(st.b[bin], {*r});
        st.c[0].push_back(*r);
        refill(st, bin);
        st.rest = Concat(st.rest, redistribute(st));
        Instance order_items = Sorted(HighOf(st.rest), ByHeightDesc);
        order_items = Concat(
            order_items,
            Sorted(Filter(st.rest,
                          [](const Item& it) {
                            return !IsHigh(it) && !IsWide(it);
                          }),
                   ByAreaDesc));
        order_items =
            Concat(order_items, Sorted(WideOf(st.rest), ByWidthDesc));
        st.rest = FirstFitHalfArea(order_items, {&st.c[0], &st.c[bin]});
        return {Finish(st), "case-4/stopped"};
      }
      base = std::move(trial);
      filled = std::move(with_high);
    }
    base = filled ? std::move(*filled) : std::move(s);
    // Roles of wide and high items are swapped: rotate and continue.
    CaseSolver rotated(Transposed(ctx_));
    StepState t = Transposed(base);
    const int d = rotated.CaseOf(t);
    CaseOutcome out;
    if (d == 2) {
      out = rotated.Case2(std::move(t), "case-4/rotated/");
    } else if (d == 3) {
      out = rotated.Case3(std::move(t), "case-4/rotated/");
    } else {
      throw GuessFailed("rotation did not reach case 2 or 3");
    }
    out.packing = pack2d::Transposed(out.packing);
    return out;
  }

 private:
  static Scalar MinHeightOf(const Instance& items) {
    Scalar m = items.front().h;
    for (const Item& it : items) m = Min(m, it.h);
    return m;
  }

  ConstContext ctx_;
  Realizer realize_;
};

}  // namespace internal

// Visits every assignment of the large items to l bins, bin 1 first. Bins
// 2..l are unordered: non-empty parts appear by ascending smallest position
// in `large`, empty parts last. Parts that exceed unit area or fail the exact
// single-bin check are pruned. `visit` returns false to stop. Returns the
// number of assignments visited.
inline int64_t EnumerateLargeAssignments(
    const Instance& large, int ell,
    const std::function<bool(const std::vector<Instance>&)>& visit,
    const OptConstOptions& opts = {}) {
  const int m = static_cast<int>(large.size());
  if (m > opts.enumeration_limit || m > 20) {
    throw InstanceTooLarge(std::to_string(m) +
                           " large items exceed the enumeration limit " +
                           std::to_string(opts.enumeration_limit));
  }
  if (ell < 1) throw PreconditionViolated("l must be positive");
  ExactOptions exact = opts.exact;
  exact.exact_limit = std::max(exact.exact_limit, m);
  std::map<uint32_t, bool> fits;
  auto feasible = [&](uint32_t mask) {
    auto it = fits.find(mask);
    if (it != fits.end()) return it->second;
    Instance part;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) part.push_back(large[i]);
    }
    bool ok = Vol(part) <= 1;
    if (ok) {
      try {
        ok = ExactPackSingleRegion(part, 1, 1, exact).has_value();
      } catch (const InstanceTooLarge&) {
        ok = false;
      }
    }
    fits.emplace(mask, ok);
    return ok;
  };

  std::vector<int> label(static_cast<size_t>(m), 0);
  int64_t visited = 0;
  for (;;) {
    // Canonical: first positions of bins 2..l increase, empties last.
    std::vector<int> first(static_cast<size_t>(ell), m);
    std::vector<uint32_t> mask(static_cast<size_t>(ell), 0);
    for (int i = 0; i < m; ++i) {
      const size_t b = static_cast<size_t>(label[static_cast<size_t>(i)]);
      first[b] = std::min(first[b], i);
      mask[b] |= 1u << i;
    }
    bool canonical = true;
    for (int b = 2; b < ell; ++b) {
      if (first[static_cast<size_t>(b)] < first[static_cast<size_t>(b - 1)]) {
        canonical = false;
      }
    }
    if (canonical) {
      bool ok = true;
      for (int b = 0; b < ell && ok; ++b) ok = feasible(mask[static_cast<size_t>(b)]);
      if (ok) {
        std::vector<Instance> parts(static_cast<size_t>(ell));
        for (int i = 0; i < m; ++i) {
          parts[static_cast<size_t>(label[static_cast<size_t>(i)])].push_back(
              large[static_cast<size_t>(i)]);
        }
        ++visited;
        if (!visit(parts)) return visited;
      }
    }
    int pos = m - 1;
    while (pos >= 0 && label[static_cast<size_t>(pos)] == ell - 1) {
      label[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++label[static_cast<size_t>(pos)];
  }
  return visited;
}

namespace internal {

// Step two: B_1 from L_1 and the tiny items by the profit knapsack.
inline ConstContext StepsOneAndTwo(const Instance& items, int ell,
                                   const std::vector<Instance>& parts,
                                   const Scalar& eps,
                                   const ExactOptions& opts) {
  if (static_cast<int>(parts.size()) != ell || ell < 1) {
    throw PreconditionViolated("assignment must have l parts");
  }
  ConstContext ctx;
  ctx.ell = ell;
  ctx.eps = eps;
  ctx.parts = parts;
  ctx.opts = opts;
  ctx.all = items;
  const Instance tiny =
      Filter(items, [&](const Item& it) { return !IsLarge(it, eps); });
  std::vector<ProfitItem> pool;
  const Scalar boost = 1 / eps + 1;
  for (const Item& it : parts[0]) pool.push_back({it, it.Area() * boost});
  for (const Item& it : tiny) pool.push_back({it, it.Area()});
  const Scalar accuracy = eps * eps / (1 + 2 * eps);
  KnapsackResult pick;
  try {
    pick = MaxProfitPack(pool, 1, 1, accuracy, opts);
  } catch (const KnapsackTooLarge& e) {
    pick = e.best_effort();
    ctx.knapsack_certified = false;
  }
  const std::set<int> chosen = IdSet(pick.selected);
  for (const Item& it : parts[0]) {
    if (!chosen.count(it.id)) {
      throw GuessFailed("first bin knapsack dropped a guessed large item");
    }
  }
  ctx.b1 = pick.layout;
  ctx.tiny_rest = Without(tiny, chosen);
  return ctx;
}

}  // namespace internal

// First four steps for a given assignment of the large items.
inline StepState RunStepsOneToFour(const Instance& items, int ell,
                                   const std::vector<Instance>& parts,
                                   const Scalar& eps,
                                   const ExactOptions& opts = {}) {
  return internal::Separate(
      internal::StepsOneAndTwo(items, ell, parts, eps, opts));
}

// Packing into at most 2l bins for an instance with optimum l, trying every
// assignment of the large items in enumeration order. Throws GuessFailed when
// none succeeds.
inline OptConstResult PackOptConst(const Instance& items, int ell, int k,
                                   const OptConstOptions& opts = {}) {
  if (ell < 2) throw PreconditionViolated("l must be at least 2");
  const Scalar eps = OptConstEpsilon(k);
  const Instance large =
      Filter(items, [&](const Item& it) { return IsLarge(it, eps); });
  OptConstResult out;
  out.ell = ell;
  std::optional<OptConstResult> found;
  std::string last_failure = "no feasible assignment";
  out.assignments_tried = EnumerateLargeAssignments(
      large, ell,
      [&](const std::vector<Instance>& parts) {
        try {
          internal::ConstContext ctx =
              internal::StepsOneAndTwo(items, ell, parts, eps, opts.exact);
          internal::CaseSolver solver(ctx);
          StepState s = internal::Separate(ctx);
          const int d = solver.CaseOf(s);
          internal::CaseOutcome o = solver.Dispatch(std::move(s));
          OptConstResult r;
          r.packing = std::move(o.packing);
          r.ell = ell;
          r.dispatch_case = d;
          r.route = std::move(o.route);
          r.knapsack_certified = ctx.knapsack_certified;
          found = std::move(r);
          return false;
        } catch (const GuessFailed& e) {
          last_failure = e.what();
        } catch (const PreconditionViolated& e) {
          last_failure = e.what();
        } catch (const ConditionViolated& e) {
          last_failure = e.what();
        }
        return true;
      },
      opts);
  if (!found) {
    throw GuessFailed("no assignment of the large items into " +
                      std::to_string(ell) + " bins succeeded; last: " +
                      last_failure);
  }
  found->assignments_tried = out.assignments_tried;
  return std::move(*found);
}

}  // namespace pack2d

#endif  // PACK2D_OPTCONST_HPP_
