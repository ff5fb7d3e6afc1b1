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

// Exact single-region feasibility search and the profit/area maximizing
// rectangle knapsack built on it.

#ifndef PACK2D_KNAPSACK_HPP_
#define PACK2D_KNAPSACK_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pack2d/classify.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/rng.hpp"
#include "pack2d/scalar.hpp"
#include "pack2d/steinberg.hpp"

namespace pack2d {

struct ExactOptions {
  int exact_limit = 10;
  // Search nodes per feasibility question before giving up.
  int64_t node_budget = 4'000'000;
};

enum class Fit { kFeasible, kInfeasible, kUnknown };

struct FitResult {
  Fit fit = Fit::kUnknown;
  BinLayout layout;
};

namespace internal {

// Depth-first search over placements whose left and bottom sides both touch
// the region boundary or an already placed item. Any packing can be pushed
// down-left until every item is blocked on both sides, and blocked packings
// admit an insertion order in which each item's blockers come first, so the
// search is complete. Among items placeable at a node only the lowest rank
// is kept once the previous item did not enable it.
template <typename T>
class PlacementSearch {
 public:
  struct Box {
    T w, h;
    int rank;
  };

  PlacementSearch(std::vector<Box> boxes, T a, T b, int64_t budget)
      : boxes_(std::move(boxes)),
        a_(a),
        b_(b),
        budget_(budget),
        x_(boxes_.size()),
        y_(boxes_.size()),
        placed_(boxes_.size(), false) {}

  Fit Run() {
    sequence_.clear();
    if (Dfs()) return Fit::kFeasible;
    return exhausted_ ? Fit::kUnknown : Fit::kInfeasible;
  }

  const T& x(size_t i) const { return x_[i]; }
  const T& y(size_t i) const { return y_[i]; }

 private:
  static bool OpenMeet(const T& a0, const T& a1, const T& b0, const T& b1) {
    return (a0 > b0 ? a0 : b0) < (a1 < b1 ? a1 : b1);
  }

  bool LeftSupported(size_t i, const T& x, const T& y, int skip) const {
    if (x == T(0)) return true;
    const T y1 = y + boxes_[i].h;
    for (size_t k : sequence_) {
      if (static_cast<int>(k) == skip) continue;
      if (x_[k] + boxes_[k].w == x &&
          OpenMeet(y, y1, y_[k], y_[k] + boxes_[k].h)) {
        return true;
      }
    }
    return false;
  }

  bool BottomSupported(size_t i, const T& x, const T& y, int skip) const {
    if (y == T(0)) return true;
    const T x1 = x + boxes_[i].w;
    for (size_t k : sequence_) {
      if (static_cast<int>(k) == skip) continue;
      if (y_[k] + boxes_[k].h == y &&
          OpenMeet(x, x1, x_[k], x_[k] + boxes_[k].w)) {
        return true;
      }
    }
    return false;
  }

  bool Free(size_t i, const T& x, const T& y) const {
    if (x + boxes_[i].w > a_ || y + boxes_[i].h > b_) return false;
    const T x1 = x + boxes_[i].w;
    const T y1 = y + boxes_[i].h;
    for (size_t k : sequence_) {
      if (OpenMeet(x, x1, x_[k], x_[k] + boxes_[k].w) &&
          OpenMeet(y, y1, y_[k], y_[k] + boxes_[k].h)) {
        return false;
      }
    }
    return true;
  }

  bool Dfs() {
    if (sequence_.size() == boxes_.size()) return true;
    if (--budget_ < 0) {
      exhausted_ = true;
      return false;
    }
    std::vector<T> xs = {T(0)};
    std::vector<T> ys = {T(0)};
    for (size_t k : sequence_) {
      xs.push_back(x_[k] + boxes_[k].w);
      ys.push_back(y_[k] + boxes_[k].h);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const int last = sequence_.empty() ? -1 : static_cast<int>(sequence_.back());
    std::vector<int> tried_rank;
    for (size_t i = 0; i < boxes_.size(); ++i) {
      if (placed_[i]) continue;
      const int rank = boxes_[i].rank;
      if (std::find(tried_rank.begin(), tried_rank.end(), rank) !=
          tried_rank.end()) {
        continue;
      }
      tried_rank.push_back(rank);
      for (const T& x : xs) {
        for (const T& y : ys) {
          if (!Free(i, x, y)) continue;
          if (!LeftSupported(i, x, y, -1) || !BottomSupported(i, x, y, -1)) {
            continue;
          }
          // Canonical order: a lower-rank item that was already placeable
          // before the previous item should have come first.
          if (last >= 0 && rank < boxes_[last].rank &&
              LeftSupported(i, x, y, last) && BottomSupported(i, x, y, last)) {
            continue;
          }
          placed_[i] = true;
          x_[i] = x;
          y_[i] = y;
          sequence_.push_back(i);
          if (Dfs()) return true;
          sequence_.pop_back();
          placed_[i] = false;
          if (exhausted_) return false;
        }
      }
    }
    return false;
  }

  std::vector<Box> boxes_;
  T a_, b_;
  int64_t budget_;
  bool exhausted_ = false;
  std::vector<T> x_, y_;
  std::vector<bool> placed_;
  std::vector<size_t> sequence_;
};

// Least common multiple of the denominators, or 0 when the scaled values
// would not fit comfortably in 64 bits.
inline int64_t CommonScale(const Instance& items, const Scalar& a,
                           const Scalar& b) {
  mpz_class l = 1;
  auto fold = [&](const Scalar& s) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.get_den_mpz_t());
  };
  fold(a);
  fold(b);
  for (const Item& it : items) {
    fold(it.w);
    fold(it.h);
  }
  const mpz_class limit = mpz_class(1) << 50;
  const Scalar top = Max(a, b) * Scalar(l);
  if (top.get_num() > limit || l > limit) return 0;
  return l.get_si();
}

// Ranks: equal dimensions share a rank; larger area first.
inline std::vector<int> Ranks(const Instance& items) {
  std::vector<size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t p, size_t q) {
    return ByAreaDesc(items[p], items[q]);
  });
  std::vector<int> rank(items.size());
  int r = -1;
  for (size_t k = 0; k < idx.size(); ++k) {
    const Item& it = items[idx[k]];
    if (k == 0 || it.w != items[idx[k - 1]].w || it.h != items[idx[k - 1]].h) {
      ++r;
    }
    rank[idx[k]] = r;
  }
  return rank;
}

// Items that pairwise cannot sit side by side must be stacked, and vice
// versa. Checks every conflict clique (n is small).
inline bool CliqueBoundsHold(const Instance& items, const Scalar& a,
                             const Scalar& b) {
  const size_t n = items.size();
  if (n > 16) return true;
  std::vector<uint32_t> xadj(n, 0), yadj(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (items[i].w + items[j].w > a) xadj[i] |= 1u << j;
      if (items[i].h + items[j].h > b) yadj[i] |= 1u << j;
    }
  }
  const uint32_t full = (1u << n);
  std::vector<char> xc(full, 0), yc(full, 0);
  std::vector<Scalar> hs(full), ws(full);
  xc[0] = yc[0] = 1;
  for (uint32_t m = 1; m < full; ++m) {
    const int low = __builtin_ctz(m);
    const uint32_t rest = m & (m - 1);
    hs[m] = hs[rest] + items[low].h;
    ws[m] = ws[rest] + items[low].w;
    xc[m] = xc[rest] && (xadj[low] & rest) == rest;
    yc[m] = yc[rest] && (yadj[low] & rest) == rest;
    if (xc[m] && hs[m] > b) return false;
    if (yc[m] && ws[m] > a) return false;
  }
  return true;
}

// Dual feasible functions on [0, 1]: each maps a set of lengths that fits
// in the unit to a set whose images still sum to at most one.
inline std::vector<std::function<Scalar(const Scalar&)>> DualFunctions(
    const std::vector<Scalar>& lengths) {
  std::vector<std::function<Scalar(const Scalar&)>> out;
  out.push_back([](const Scalar& x) { return x; });
  for (long k = 1; k <= 8; ++k) {
    out.push_back([k](const Scalar& x) {
      const Scalar s = x * (k + 1);
      if (s.get_den() == 1) return x;
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
      return Scalar(Scalar(f) / k);
    });
  }
  std::vector<Scalar> lambdas;
  for (const Scalar& x : lengths) {
    if (x <= Half()) lambdas.push_back(x);
    if (1 - x <= Half() && sgn(1 - x) > 0) lambdas.push_back(1 - x);
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  for (const Scalar& lambda : lambdas) {
    out.push_back([lambda](const Scalar& x) {
      if (x > 1 - lambda) return Scalar(1);
      if (x < lambda) return Scalar(0);
      return x;
    });
  }
  return out;
}

// True when some pair of dual feasible functions proves the items do not
// fit in region (a, b).
inline bool DualBoundExceeded(const Instance& items, const Scalar& a,
                              const Scalar& b) {
  std::vector<Scalar> ws, hs;
  for (const Item& it : items) {
    ws.push_back(it.w / a);
    hs.push_back(it.h / b);
  }
  const auto fx = DualFunctions(ws);
  const auto fy = DualFunctions(hs);
  std::vector<std::vector<Scalar>> gx, gy;
  for (const auto& f : fx) {
    gx.emplace_back();
    for (const Scalar& w : ws) gx.back().push_back(f(w));
  }
  for (const auto& f : fy) {
    gy.emplace_back();
    for (const Scalar& h : hs) gy.back().push_back(f(h));
  }
  for (const auto& px : gx) {
    for (const auto& py : gy) {
      Scalar total = 0;
      for (size_t i = 0; i < items.size(); ++i) total += px[i] * py[i];
      if (total > 1) return true;
    }
  }
  return false;
}

// Maximal-free-rectangles heuristic over several item orders and fit rules.
class MaxRects {
 public:
  struct Rect {
    Scalar x, y, w, h;
  };

  MaxRects(const Scalar& a, const Scalar& b) : a_(a), b_(b) {}

  std::optional<BinLayout> Pack(const Instance& order, int rule) const {
    std::vector<Rect> free = {{0, 0, a_, b_}};
    BinLayout layout;
    layout.width = a_;
    layout.height = b_;
    for (const Item& it : order) {
      int best = -1;
      Scalar k1, k2;
      for (size_t f = 0; f < free.size(); ++f) {
        const Rect& r = free[f];
        if (it.w > r.w || it.h > r.h) continue;
        Scalar s1, s2;
        if (rule == 0) {
          s1 = Min(r.w - it.w, r.h - it.h);
          s2 = Max(r.w - it.w, r.h - it.h);
        } else if (rule == 1) {
          s1 = r.y + it.h;
          s2 = r.x;
        } else {
          s1 = r.w * r.h - it.Area();
          s2 = Min(r.w - it.w, r.h - it.h);
        }
        if (best < 0 || s1 < k1 || (s1 == k1 && s2 < k2)) {
          best = static_cast<int>(f);
          k1 = s1;
          k2 = s2;
        }
      }
      if (best < 0) return std::nullopt;
      const Rect used = {free[best].x, free[best].y, it.w, it.h};
      layout.Place(it, used.x, used.y);
      Split(free, used);
    }
    return layout;
  }

 private:
  static void Split(std::vector<Rect>& free, const Rect& u) {
    std::vector<Rect> next;
    for (const Rect& r : free) {
      if (u.x >= r.x + r.w || u.x + u.w <= r.x || u.y >= r.y + r.h ||
          u.y + u.h <= r.y) {
        next.push_back(r);
        continue;
      }
      if (u.x > r.x) next.push_back({r.x, r.y, u.x - r.x, r.h});
      if (u.x + u.w < r.x + r.w) {
        next.push_back({u.x + u.w, r.y, r.x + r.w - u.x - u.w, r.h});
      }
      if (u.y > r.y) next.push_back({r.x, r.y, r.w, u.y - r.y});
      if (u.y + u.h < r.y + r.h) {
        next.push_back({r.x, u.y + u.h, r.w, r.y + r.h - u.y - u.h});
      }
    }
    free.clear();
    for (size_t i = 0; i < next.size(); ++i) {
      bool contained = false;
      for (size_t j = 0; j < next.size() && !contained; ++j) {
        if (i == j) continue;
        const Rect& p = next[i];
        const Rect& q = next[j];
        const bool inside = p.x >= q.x && p.y >= q.y &&
                            p.x + p.w <= q.x + q.w && p.y + p.h <= q.y + q.h;
        // Equal rectangles: keep the first copy only.
        if (inside && (j < i || !(q.x >= p.x && q.y >= p.y &&
                                  q.x + q.w <= p.x + p.w &&
                                  q.y + q.h <= p.y + p.h))) {
          contained = true;
        }
      }
      if (!contained) free.push_back(next[i]);
    }
  }

  Scalar a_, b_;
};

inline std::optional<BinLayout> HeuristicPack(const Instance& items,
                                              const Scalar& a,
                                              const Scalar& b) {
  const MaxRects packer(a, b);
  std::vector<Instance> orders = {
      Sorted(items, ByAreaDesc), Sorted(items, ByWidthDesc),
      Sorted(items, ByHeightDesc),
      Sorted(items, [](const Item& p, const Item& q) {
        const Scalar sp = Max(p.w, p.h), sq = Max(q.w, q.h);
        return sp != sq ? sp > sq : ByAreaDesc(p, q);
      })};
  Rng rng(items.size());
  for (int i = 0; i < 24; ++i) {
    Instance shuffled = orders[0];
    rng.Shuffle(shuffled);
    orders.push_back(std::move(shuffled));
  }
  for (const Instance& order : orders) {
    for (int rule = 0; rule < 3; ++rule) {
      if (auto layout = packer.Pack(order, rule)) return layout;
    }
  }
  return std::nullopt;
}

// Search over a grid whose lines are all subset sums of the widths and of
// the heights. Item edges then fall on grid lines, so every cell is either
// covered by one item or empty. Cells are decided in row-major order: the
// first undecided cell either holds some item's lower-left corner or stays
// empty, and empty cells are charged against the area slack.
class CellSearch {
 public:
  struct Box {
    int64_t w, h;
    int rank;
  };

  CellSearch(std::vector<Box> boxes, int64_t a, int64_t b, int64_t budget)
      : boxes_(std::move(boxes)),
        a_(a),
        b_(b),
        budget_(budget),
        x_(boxes_.size(), 0),
        y_(boxes_.size(), 0),
        placed_(boxes_.size(), false),
        left_(boxes_.size()) {}

  Fit Run() {
    xs_ = SubsetSums(true, a_);
    ys_ = SubsetSums(false, b_);
    cols_ = xs_.size() - 1;
    occupied_.assign(cols_ * (ys_.size() - 1), 0);
    int64_t area = 0;
    for (const Box& box : boxes_) area += box.w * box.h;
    slack_ = a_ * b_ - area;
    if (Dfs(0, 0)) return Fit::kFeasible;
    return exhausted_ ? Fit::kUnknown : Fit::kInfeasible;
  }

  int64_t x(size_t i) const { return x_[i]; }
  int64_t y(size_t i) const { return y_[i]; }

  // Grid lines are affordable when both sums tables stay small.
  static bool Affordable(int64_t a, int64_t b) {
    return a <= 1 << 16 && b <= 1 << 16;
  }

 private:
  std::vector<int64_t> SubsetSums(bool widths, int64_t cap) const {
    std::vector<char> reach(static_cast<size_t>(cap) + 1, 0);
    reach[0] = 1;
    for (const Box& box : boxes_) {
      const int64_t d = widths ? box.w : box.h;
      for (int64_t v = cap - d; v >= 0; --v) {
        if (reach[v]) reach[v + d] = 1;
      }
    }
    std::vector<int64_t> out;
    for (int64_t v = 0; v <= cap; ++v) {
      if (reach[v]) out.push_back(v);
    }
    if (out.back() != cap) out.push_back(cap);
    return out;
  }

  void Mark(size_t r0, size_t r1, size_t c0, size_t c1, char value) {
    for (size_t r = r0; r < r1; ++r) {
      std::fill(occupied_.begin() + r * cols_ + c0,
                occupied_.begin() + r * cols_ + c1, value);
    }
  }

  bool Vacant(size_t r0, size_t r1, size_t c0, size_t c1) const {
    for (size_t r = r0; r < r1; ++r) {
      for (size_t c = c0; c < c1; ++c) {
        if (occupied_[r * cols_ + c]) return false;
      }
    }
    return true;
  }

  // For every length g, the largest sum of unplaced item sides (widths or
  // heights) that does not exceed g. Lengths are looked up on the grid.
  std::vector<int64_t> BestFill(const std::vector<int64_t>& lines,
                                bool widths) const {
    std::vector<char> reach(lines.size(), 0);
    reach[0] = 1;
    for (size_t i = 0; i < boxes_.size(); ++i) {
      if (placed_[i]) continue;
      const int64_t d = widths ? boxes_[i].w : boxes_[i].h;
      for (size_t j = lines.size(); j-- > 0;) {
        if (!reach[j]) continue;
        auto it = std::lower_bound(lines.begin(), lines.end(), lines[j] + d);
        if (it != lines.end() && *it == lines[j] + d) {
          reach[static_cast<size_t>(it - lines.begin())] = 1;
        }
      }
    }
    std::vector<int64_t> best(lines.size(), 0);
    for (size_t j = 0; j < lines.size(); ++j) {
      best[j] = reach[j] ? lines[j] : (j > 0 ? best[j - 1] : 0);
    }
    return best;
  }

  static int64_t Fill(const std::vector<int64_t>& lines,
                      const std::vector<int64_t>& best, int64_t g) {
    const size_t j = static_cast<size_t>(
        std::upper_bound(lines.begin(), lines.end(), g) - lines.begin());
    return best[j - 1];
  }

  // Lower bound on the area left empty among undecided cells: a free run
  // of cells along a row can only be covered by unplaced items side by
  // side, and likewise along a column.
  int64_t FutureWaste(size_t cell) {
    auto cached = fills_.find(placed_mask_);
    if (cached == fills_.end()) {
      cached = fills_
                   .emplace(placed_mask_, std::make_pair(BestFill(xs_, true),
                                                         BestFill(ys_, false)))
                   .first;
    }
    const std::vector<int64_t>& fill_x = cached->second.first;
    const std::vector<int64_t>& fill_y = cached->second.second;
    const size_t rows = ys_.size() - 1;
    const size_t r0 = cell / cols_;
    const size_t c0 = cell % cols_;
    int64_t by_rows = 0;
    for (size_t r = r0; r < rows; ++r) {
      int64_t lost = 0;
      for (size_t c = r == r0 ? c0 : 0; c < cols_;) {
        if (occupied_[r * cols_ + c]) {
          ++c;
          continue;
        }
        size_t e = c;
        while (e < cols_ && !occupied_[r * cols_ + e]) ++e;
        const int64_t g = xs_[e] - xs_[c];
        lost += g - Fill(xs_, fill_x, g);
        c = e;
      }
      by_rows += lost * (ys_[r + 1] - ys_[r]);
    }
    int64_t by_cols = 0;
    for (size_t c = 0; c < cols_; ++c) {
      int64_t lost = 0;
      for (size_t r = c >= c0 ? r0 : r0 + 1; r < rows;) {
        if (occupied_[r * cols_ + c]) {
          ++r;
          continue;
        }
        size_t e = r;
        while (e < rows && !occupied_[e * cols_ + c]) ++e;
        const int64_t g = ys_[e] - ys_[r];
        lost += g - Fill(ys_, fill_y, g);
        r = e;
      }
      by_cols += lost * (xs_[c + 1] - xs_[c]);
    }
    return std::max(by_rows, by_cols);
  }

  bool Dfs(size_t cell, int64_t waste) {
    if (left_ == 0) return true;
    while (cell < occupied_.size() && occupied_[cell]) ++cell;
    if (cell == occupied_.size()) return false;
    if (--budget_ < 0) {
      exhausted_ = true;
      return false;
    }
    if (waste + FutureWaste(cell) > slack_) return false;
    const size_t r = cell / cols_;
    const size_t c = cell % cols_;
    const int64_t x = xs_[c];
    const int64_t y = ys_[r];
    std::vector<int> tried_rank;
    for (size_t i = 0; i < boxes_.size(); ++i) {
      if (placed_[i]) continue;
      const int rank = boxes_[i].rank;
      if (std::find(tried_rank.begin(), tried_rank.end(), rank) !=
          tried_rank.end()) {
        continue;
      }
      tried_rank.push_back(rank);
      const int64_t x1 = x + boxes_[i].w;
      const int64_t y1 = y + boxes_[i].h;
      if (x1 > a_ || y1 > b_) continue;
      const size_t c1 = static_cast<size_t>(
          std::lower_bound(xs_.begin(), xs_.end(), x1) - xs_.begin());
      const size_t r1 = static_cast<size_t>(
          std::lower_bound(ys_.begin(), ys_.end(), y1) - ys_.begin());
      if (!Vacant(r, r1, c, c1)) continue;
      Mark(r, r1, c, c1, 1);
      placed_[i] = true;
      placed_mask_ ^= uint64_t{1} << i;
      x_[i] = x;
      y_[i] = y;
      --left_;
      if (Dfs(cell + 1, waste)) return true;
      ++left_;
      placed_mask_ ^= uint64_t{1} << i;
      placed_[i] = false;
      Mark(r, r1, c, c1, 0);
      if (exhausted_) return false;
    }
    const int64_t lost = (xs_[c + 1] - x) * (ys_[r + 1] - y);
    if (waste + lost > slack_) return false;
    occupied_[cell] = 2;
    const bool found = Dfs(cell + 1, waste + lost);
    occupied_[cell] = 0;
    return found;
  }

  std::vector<Box> boxes_;
  int64_t a_, b_;
  int64_t budget_;
  bool exhausted_ = false;
  std::vector<int64_t> x_, y_;
  std::vector<bool> placed_;
  size_t left_;
  std::vector<int64_t> xs_, ys_;
  size_t cols_ = 0;
  std::vector<char> occupied_;
  int64_t slack_ = 0;
  uint64_t placed_mask_ = 0;
  std::unordered_map<uint64_t, std::pair<std::vector<int64_t>,
                                         std::vector<int64_t>>>
      fills_;
};

// Scaled integer search: the cell search and the placement search run in
// alternation with doubling budgets; either one settles the question.
inline FitResult SearchScaled(const Instance& items, int64_t scale,
                              const Scalar& a, const Scalar& b,
                              int64_t budget) {
  auto scaled = [&](const Scalar& s) {
    return Scalar(s * scale).get_num().get_si();
  };
  const int64_t ga = scaled(a);
  const int64_t gb = scaled(b);
  const std::vector<int> rank = Ranks(items);
  std::vector<CellSearch::Box> cell_boxes;
  std::vector<PlacementSearch<int64_t>::Box> corner_boxes;
  for (size_t i = 0; i < items.size(); ++i) {
    cell_boxes.push_back({scaled(items[i].w), scaled(items[i].h), rank[i]});
    corner_boxes.push_back({scaled(items[i].w), scaled(items[i].h), rank[i]});
  }
  const bool cells = CellSearch::Affordable(ga, gb);
  FitResult out;
  out.layout.width = a;
  out.layout.height = b;
  auto emit = [&](const auto& search) {
    for (size_t i = 0; i < items.size(); ++i) {
      out.layout.Place(items[i], Rational(search.x(i), scale),
                       Rational(search.y(i), scale));
    }
  };
  for (int64_t round = std::min<int64_t>(budget, 20'000);;
       round = std::min(budget, 2 * round)) {
    if (cells) {
      CellSearch search(cell_boxes, ga, gb, round / 4);
      out.fit = search.Run();
      if (out.fit == Fit::kFeasible) emit(search);
      if (out.fit != Fit::kUnknown) return out;
    }
    PlacementSearch<int64_t> search(corner_boxes, ga, gb, round);
    out.fit = search.Run();
    if (out.fit == Fit::kFeasible) emit(search);
    if (out.fit != Fit::kUnknown || round == budget) return out;
  }
}

inline FitResult SearchRational(const Instance& items, const Scalar& a,
                                const Scalar& b, int64_t budget) {
  const std::vector<int> rank = Ranks(items);
  std::vector<PlacementSearch<Scalar>::Box> boxes;
  for (size_t i = 0; i < items.size(); ++i) {
    boxes.push_back({items[i].w, items[i].h, rank[i]});
  }
  PlacementSearch<Scalar> search(std::move(boxes), a, b, budget);
  FitResult out;
  out.layout.width = a;
  out.layout.height = b;
  out.fit = search.Run();
  if (out.fit == Fit::kFeasible) {
    for (size_t i = 0; i < items.size(); ++i) {
      out.layout.Place(items[i], search.x(i), search.y(i));
    }
  }
  return out;
}

// Index of an item that no other item can sit beside (it then fills a full
// horizontal band), or -1. With transpose, the same for columns.
inline int LoneBand(const Instance& items, const Scalar& a, bool columns) {
  for (size_t i = 0; i < items.size(); ++i) {
    const Scalar& wi = columns ? items[i].h : items[i].w;
    bool lone = true;
    for (size_t j = 0; j < items.size() && lone; ++j) {
      const Scalar& wj = columns ? items[j].h : items[j].w;
      if (j != i && wi + wj <= a) lone = false;
    }
    if (lone) return static_cast<int>(i);
  }
  return -1;
}

// Feasibility without the size limit; the node budget bounds the work.
inline FitResult SearchFit(const Instance& items, const Scalar& a,
                           const Scalar& b, int64_t budget) {
  FitResult out;
  out.layout.width = a;
  out.layout.height = b;
  // Items that admit no neighbour across one axis fill a full band of the
  // region; bands can be moved to the bottom or left edge and cut off.
  Instance rest = items;
  Scalar ra = a, rb = b, ox = 0, oy = 0;
  for (;;) {
    if (rest.empty()) {
      out.fit = Fit::kFeasible;
      return out;
    }
    if (MaxWidth(rest) > ra || MaxHeight(rest) > rb ||
        Vol(rest) > ra * rb) {
      out.fit = Fit::kInfeasible;
      return out;
    }
    if (const int i = LoneBand(rest, ra, false); i >= 0) {
      out.layout.Place(rest[i], ox, oy);
      oy += rest[i].h;
      rb -= rest[i].h;
      rest.erase(rest.begin() + i);
      continue;
    }
    if (const int i = LoneBand(rest, rb, true); i >= 0) {
      out.layout.Place(rest[i], ox, oy);
      ox += rest[i].w;
      ra -= rest[i].w;
      rest.erase(rest.begin() + i);
      continue;
    }
    break;
  }
  FitResult r;
  if (SteinbergCondition(rest, ra, rb)) {
    r.fit = Fit::kFeasible;
    r.layout = SteinbergRec(rest, ra, rb);
  } else if (!CliqueBoundsHold(rest, ra, rb) ||
             DualBoundExceeded(rest, ra, rb)) {
    r.fit = Fit::kInfeasible;
  } else if (auto layout = HeuristicPack(rest, ra, rb)) {
    r.fit = Fit::kFeasible;
    r.layout = std::move(*layout);
  } else if (const int64_t scale = CommonScale(rest, ra, rb); scale > 0) {
    r = SearchScaled(rest, scale, ra, rb, budget);
  } else {
    r = SearchRational(rest, ra, rb, budget);
  }
  out.fit = r.fit;
  if (r.fit == Fit::kFeasible) out.layout.Embed(r.layout, ox, oy);
  return out;
}

}  // namespace internal

// Exact feasibility of packing all items into region (a, b).
inline FitResult ExactFit(const Instance& items, const Scalar& a,
                          const Scalar& b, const ExactOptions& opts = {}) {
  if (static_cast<int>(items.size()) > opts.exact_limit) {
    throw InstanceTooLarge(std::to_string(items.size()) +
                           " items exceed the exact limit " +
                           std::to_string(opts.exact_limit));
  }
  return internal::SearchFit(items, a, b, opts.node_budget);
}

// Layout of all items in region (a, b), or std::nullopt when none exists.
// Throws InstanceTooLarge above the exact limit or when the search budget
// runs out.
inline std::optional<BinLayout> ExactPackSingleRegion(
    const Instance& items, const Scalar& a, const Scalar& b,
    const ExactOptions& opts = {}) {
  FitResult r = ExactFit(items, a, b, opts);
  if (r.fit == Fit::kUnknown) {
    throw InstanceTooLarge("placement search budget exhausted on " +
                           std::to_string(items.size()) + " items");
  }
  if (r.fit == Fit::kInfeasible) return std::nullopt;
  return std::move(r.layout);
}

// ---------------------------------------------------------------------------
// Knapsack.

struct ProfitItem {
  Item item;
  Scalar profit;
};

struct KnapsackResult {
  Instance selected;
  BinLayout layout;
  Scalar profit;
  bool exact = false;
};

// Raised above the exact limit when the best-effort result cannot be
// certified against the contract; carries that result.
class KnapsackTooLarge : public InstanceTooLarge {
 public:
  KnapsackTooLarge(const std::string& message, KnapsackResult best)
      : InstanceTooLarge(message), best_effort_(std::move(best)) {}
  const KnapsackResult& best_effort() const { return best_effort_; }

 private:
  KnapsackResult best_effort_;
};

namespace internal {

class KnapsackSolver {
 public:
  KnapsackSolver(std::vector<ProfitItem> items, const Scalar& a,
                 const Scalar& b, int64_t budget)
      : items_(std::move(items)), a_(a), b_(b), budget_(budget) {
    std::sort(items_.begin(), items_.end(),
              [](const ProfitItem& p, const ProfitItem& q) {
                return ByAreaDesc(p.item, q.item);
              });
    area_.reserve(items_.size());
    for (const ProfitItem& p : items_) area_.push_back(p.item.Area());
  }

  // Branch and bound over subsets; exact when no feasibility question ran
  // out of budget.
  KnapsackResult Solve() {
    best_mask_ = 0;
    best_profit_ = 0;
    Dfs(0, 0, 0, 0);
    return Result(best_mask_, !unknown_seen_);
  }

  // Greedy by profit density, then by area.
  KnapsackResult Greedy() {
    KnapsackResult best = Result(0, false);
    std::vector<size_t> idx(items_.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (int pass = 0; pass < 2; ++pass) {
      if (pass == 0) {
        std::stable_sort(idx.begin(), idx.end(), [&](size_t p, size_t q) {
          const Scalar dp = items_[p].profit / area_[p];
          const Scalar dq = items_[q].profit / area_[q];
          return dp > dq;
        });
      } else {
        std::iota(idx.begin(), idx.end(), 0);
      }
      uint64_t mask = 0;
      Scalar area = 0;
      for (size_t i : idx) {
        if (area + area_[i] > a_ * b_) continue;
        if (Feasible(mask | (uint64_t{1} << i)) == Fit::kFeasible) {
          mask |= uint64_t{1} << i;
          area += area_[i];
        }
      }
      KnapsackResult r = Result(mask, false);
      if (r.profit > best.profit) best = std::move(r);
    }
    return best;
  }

  // Fractional bound on the total profit that fits by area.
  Scalar UpperBound() const { return FractionalBound(0, a_ * b_); }

  Scalar TotalProfit() const {
    Scalar s = 0;
    for (const ProfitItem& p : items_) s += p.profit;
    return s;
  }

 private:
  Scalar FractionalBound(size_t from, const Scalar& capacity) const {
    std::vector<size_t> idx;
    for (size_t i = from; i < items_.size(); ++i) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](size_t p, size_t q) {
      return items_[p].profit * area_[q] > items_[q].profit * area_[p];
    });
    Scalar cap = capacity;
    Scalar bound = 0;
    for (size_t i : idx) {
      if (sgn(cap) <= 0) break;
      if (area_[i] <= cap) {
        bound += items_[i].profit;
        cap -= area_[i];
      } else {
        bound += items_[i].profit * cap / area_[i];
        cap = 0;
      }
    }
    return bound;
  }

  Fit Feasible(uint64_t mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second.fit;
    Instance set;
    for (size_t i = 0; i < items_.size(); ++i) {
      if (mask >> i & 1) set.push_back(items_[i].item);
    }
    FitResult r = SearchFit(set, a_, b_, budget_);
    const Fit fit = r.fit;
    cache_.emplace(mask, std::move(r));
    return fit;
  }

  void Dfs(size_t i, uint64_t mask, const Scalar& profit, const Scalar& area) {
    if (profit > best_profit_) {
      best_profit_ = profit;
      best_mask_ = mask;
    }
    if (i == items_.size()) return;
    if (profit + FractionalBound(i, a_ * b_ - area) <= best_profit_) return;
    const uint64_t with = mask | (uint64_t{1} << i);
    if (area + area_[i] <= a_ * b_) {
      const Fit fit = Feasible(with);
      if (fit == Fit::kUnknown) unknown_seen_ = true;
      if (fit == Fit::kFeasible) {
        Dfs(i + 1, with, profit + items_[i].profit, area + area_[i]);
      }
    }
    Dfs(i + 1, mask, profit, area);
  }

  KnapsackResult Result(uint64_t mask, bool exact) {
    KnapsackResult r;
    r.exact = exact;
    r.profit = 0;
    Instance set;
    for (size_t i = 0; i < items_.size(); ++i) {
      if (mask >> i & 1) {
        set.push_back(items_[i].item);
        r.profit += items_[i].profit;
      }
    }
    if (mask == 0) {
      r.layout.width = a_;
      r.layout.height = b_;
    } else {
      if (Feasible(mask) != Fit::kFeasible) {
        throw InternalError("knapsack selected an unverified subset");
      }
      r.layout = cache_.at(mask).layout;
    }
    r.selected = std::move(set);
    return r;
  }

  std::vector<ProfitItem> items_;
  std::vector<Scalar> area_;
  Scalar a_, b_;
  int64_t budget_;
  std::unordered_map<uint64_t, FitResult> cache_;
  uint64_t best_mask_ = 0;
  Scalar best_profit_;
  bool unknown_seen_ = false;
};

}  // namespace internal

// Maximizes total profit of a subset packed into region (a, b). Exact up to
// the exact limit; above it a best-effort result is returned when it meets
// profit >= (1 - eps) OPT - eps against an upper bound, else
// KnapsackTooLarge carries it.
inline KnapsackResult MaxProfitPack(const std::vector<ProfitItem>& items,
                                    const Scalar& a, const Scalar& b,
                                    const Scalar& eps,
                                    const ExactOptions& opts = {}) {
  if (sgn(a) <= 0 || sgn(b) <= 0 || a > 1 || b > 1 || sgn(eps) <= 0) {
    throw PreconditionViolated("knapsack needs 0 < a, b <= 1 and eps > 0");
  }
  std::vector<ProfitItem> fitting;
  for (const ProfitItem& p : items) {
    if (p.item.w <= a && p.item.h <= b) fitting.push_back(p);
  }
  if (fitting.size() > 63) {
    throw InstanceTooLarge(std::to_string(fitting.size()) +
                           " candidate items exceed the knapsack capacity");
  }
  const bool within = static_cast<int>(fitting.size()) <= opts.exact_limit;
  internal::KnapsackSolver solver(std::move(fitting), a, b,
                                  within ? opts.node_budget : 20'000);
  if (within) {
    KnapsackResult r = solver.Solve();
    if (!r.exact) {
      throw KnapsackTooLarge("placement search budget exhausted", std::move(r));
    }
    return r;
  }
  KnapsackResult best = solver.Greedy();
  const Scalar ub = Min(solver.UpperBound(), solver.TotalProfit());
  if (best.profit >= (1 - eps) * ub - eps) return best;
  KnapsackResult searched = solver.Solve();
  searched.exact = false;
  if (searched.profit > best.profit) best = std::move(searched);
  if (best.profit >= (1 - eps) * ub - eps) return best;
  throw KnapsackTooLarge(std::to_string(items.size()) +
                             " items exceed the exact limit and the best "
                             "effort result is not certified",
                         std::move(best));
}

// Maximizes packed area: profits equal areas.
inline KnapsackResult MaxAreaPack(const Instance& items, const Scalar& a,
                                  const Scalar& b, const Scalar& eps,
                                  const ExactOptions& opts = {}) {
  std::vector<ProfitItem> p;
  p.reserve(items.size());
  for (const Item& it : items) p.push_back({it, it.Area()});
  return MaxProfitPack(p, a, b, eps, opts);
}

}  // namespace pack2d

#endif  // PACK2D_KNAPSACK_HPP_
