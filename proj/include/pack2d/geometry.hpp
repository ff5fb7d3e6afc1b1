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

// Items, placements, bins and the exact overlap/containment validator.

#ifndef PACK2D_GEOMETRY_HPP_
#define PACK2D_GEOMETRY_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pack2d/scalar.hpp"

namespace pack2d {

struct Item {
  int id = 0;
  Scalar w;
  Scalar h;

  Scalar Area() const { return w * h; }
  friend bool operator==(const Item& a, const Item& b) {
    return a.id == b.id && a.w == b.w && a.h == b.h;
  }
};

using Instance = std::vector<Item>;

// Lower-left corner of an item inside its bin or region.
struct Placement {
  Item item;
  Scalar x;
  Scalar y;

  friend bool operator==(const Placement& a, const Placement& b) {
    return a.item == b.item && a.x == b.x && a.y == b.y;
  }
};

struct BinLayout {
  Scalar width = 1;
  Scalar height = 1;
  std::vector<Placement> placements;

  bool empty() const { return placements.empty(); }
  size_t size() const { return placements.size(); }
  void Place(const Item& item, const Scalar& x, const Scalar& y) {
    placements.push_back({item, x, y});
  }
  // Appends the placements of `src` shifted by (dx, dy).
  void Embed(const BinLayout& src, const Scalar& dx, const Scalar& dy) {
    for (const Placement& p : src.placements) {
      placements.push_back({p.item, p.x + dx, p.y + dy});
    }
  }
  Instance Items() const {
    Instance out;
    out.reserve(placements.size());
    for (const Placement& p : placements) out.push_back(p.item);
    return out;
  }
  friend bool operator==(const BinLayout& a, const BinLayout& b) {
    return a.width == b.width && a.height == b.height &&
           a.placements == b.placements;
  }
};

struct Packing {
  std::vector<BinLayout> bins;

  size_t NumBins() const { return bins.size(); }
  // item id -> bin index.
  std::map<int, int> Coverage() const {
    std::map<int, int> out;
    for (size_t b = 0; b < bins.size(); ++b) {
      for (const Placement& p : bins[b].placements) {
        out.emplace(p.item.id, static_cast<int>(b));
      }
    }
    return out;
  }
  // Drops bins without placements.
  void Compact() {
    std::erase_if(bins, [](const BinLayout& b) { return b.empty(); });
  }
  friend bool operator==(const Packing& a, const Packing& b) {
    return a.bins == b.bins;
  }
};

// ---------------------------------------------------------------------------
// Validation.

struct Violation {
  enum class Kind {
    kContainment,
    kOverlap,
    kBinSize,
    kUnpacked,
    kDuplicate,
    kUnknownItem,
    kBadItem,
  };
  Kind kind;
  int first_id = -1;
  int second_id = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  size_t Count(Violation::Kind kind) const {
    return static_cast<size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [kind](const Violation& v) { return v.kind == kind; }));
  }
  std::string ToString() const {
    std::ostringstream os;
    for (const Violation& v : violations) os << v.message << '\n';
    return os.str();
  }
  void Append(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }
};

// Open interiors of the two placed rectangles intersect.
inline bool InteriorsOverlap(const Placement& a, const Placement& b) {
  return a.x < b.x + b.item.w && b.x < a.x + a.item.w &&
         a.y < b.y + b.item.h && b.y < a.y + a.item.h;
}

inline bool Contained(const Placement& p, const Scalar& width,
                      const Scalar& height) {
  return sgn(p.x) >= 0 && sgn(p.y) >= 0 && p.x + p.item.w <= width &&
         p.y + p.item.h <= height;
}

// Reports every containment violation and every overlapping pair.
inline ValidationReport ValidateBin(const BinLayout& layout) {
  ValidationReport report;
  const auto& ps = layout.placements;
  for (const Placement& p : ps) {
    if (!Contained(p, layout.width, layout.height)) {
      report.violations.push_back(
          {Violation::Kind::kContainment, p.item.id, -1,
           "item " + std::to_string(p.item.id) + " at (" + ToString(p.x) +
               ", " + ToString(p.y) + ") leaves the " +
               ToString(layout.width) + " x " + ToString(layout.height) +
               " region"});
    }
  }
  for (size_t i = 0; i < ps.size(); ++i) {
    for (size_t j = i + 1; j < ps.size(); ++j) {
      if (InteriorsOverlap(ps[i], ps[j])) {
        report.violations.push_back(
            {Violation::Kind::kOverlap, ps[i].item.id, ps[j].item.id,
             "items " + std::to_string(ps[i].item.id) + " and " +
                 std::to_string(ps[j].item.id) + " overlap"});
      }
    }
  }
  return report;
}

// Item dimensions in (0, 1] and unique ids.
inline ValidationReport ValidateInstance(const Instance& instance) {
  ValidationReport report;
  std::set<int> seen;
  for (const Item& it : instance) {
    if (sgn(it.w) <= 0 || sgn(it.h) <= 0 || it.w > 1 || it.h > 1) {
      report.violations.push_back(
          {Violation::Kind::kBadItem, it.id, -1,
           "item " + std::to_string(it.id) + " has dimensions outside (0,1]"});
    }
    if (!seen.insert(it.id).second) {
      report.violations.push_back({Violation::Kind::kDuplicate, it.id, -1,
                                   "item id " + std::to_string(it.id) +
                                       " appears twice in the instance"});
    }
  }
  return report;
}

// Every bin is a valid unit bin and each instance item is packed exactly once
// with its own dimensions.
inline ValidationReport ValidatePacking(const Packing& packing,
                                        const Instance& instance) {
  ValidationReport report;
  std::map<int, const Item*> by_id;
  for (const Item& it : instance) by_id.emplace(it.id, &it);
  std::map<int, int> times;
  for (size_t b = 0; b < packing.bins.size(); ++b) {
    const BinLayout& bin = packing.bins[b];
    if (bin.width != 1 || bin.height != 1) {
      report.violations.push_back({Violation::Kind::kBinSize, -1, -1,
                                   "bin " + std::to_string(b) +
                                       " is not a unit square"});
    }
    report.Append(ValidateBin(bin));
    for (const Placement& p : bin.placements) {
      ++times[p.item.id];
      auto it = by_id.find(p.item.id);
      if (it == by_id.end()) {
        report.violations.push_back(
            {Violation::Kind::kUnknownItem, p.item.id, -1,
             "item " + std::to_string(p.item.id) + " is not in the instance"});
      } else if (!(*it->second == p.item)) {
        report.violations.push_back(
            {Violation::Kind::kUnknownItem, p.item.id, -1,
             "item " + std::to_string(p.item.id) +
                 " is packed with different dimensions"});
      }
    }
  }
  for (const auto& [id, count] : times) {
    if (count > 1) {
      report.violations.push_back({Violation::Kind::kDuplicate, id, -1,
                                   "duplicate: item " + std::to_string(id) +
                                       " packed " + std::to_string(count) +
                                       " times"});
    }
  }
  for (const Item& it : instance) {
    if (!times.count(it.id)) {
      report.violations.push_back(
          {Violation::Kind::kUnpacked, it.id, -1,
           "unpacked item " + std::to_string(it.id)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Transposition (swap the axes).

inline Item Transposed(const Item& it) { return {it.id, it.h, it.w}; }

inline Instance Transposed(const Instance& instance) {
  Instance out;
  out.reserve(instance.size());
  for (const Item& it : instance) out.push_back(Transposed(it));
  return out;
}

inline Placement Transposed(const Placement& p) {
  return {Transposed(p.item), p.y, p.x};
}

inline BinLayout Transposed(const BinLayout& layout) {
  BinLayout out;
  out.width = layout.height;
  out.height = layout.width;
  out.placements.reserve(layout.placements.size());
  for (const Placement& p : layout.placements) {
    out.placements.push_back(Transposed(p));
  }
  return out;
}

inline Packing Transposed(const Packing& packing) {
  Packing out;
  for (const BinLayout& b : packing.bins) out.bins.push_back(Transposed(b));
  return out;
}

// ---------------------------------------------------------------------------
// Orderings. Ties always fall back to ascending id.

inline bool ByWidthDesc(const Item& a, const Item& b) {
  if (a.w != b.w) return a.w > b.w;
  if (a.h != b.h) return a.h > b.h;
  return a.id < b.id;
}

inline bool ByHeightDesc(const Item& a, const Item& b) {
  if (a.h != b.h) return a.h > b.h;
  if (a.w != b.w) return a.w > b.w;
  return a.id < b.id;
}

inline bool ByAreaDesc(const Item& a, const Item& b) {
  const Scalar aa = a.Area();
  const Scalar ba = b.Area();
  if (aa != ba) return aa > ba;
  return a.id < b.id;
}

inline bool ById(const Item& a, const Item& b) { return a.id < b.id; }

template <typename Less>
Instance Sorted(Instance items, Less less) {
  std::sort(items.begin(), items.end(), less);
  return items;
}

// ---------------------------------------------------------------------------
// Item-set helpers.

inline std::set<int> IdSet(const Instance& items) {
  std::set<int> out;
  for (const Item& it : items) out.insert(it.id);
  return out;
}

inline Instance Without(const Instance& items, const std::set<int>& ids) {
  Instance out;
  for (const Item& it : items) {
    if (!ids.count(it.id)) out.push_back(it);
  }
  return out;
}

inline Instance Without(const Instance& items, const Instance& remove) {
  return Without(items, IdSet(remove));
}

inline Instance Concat(Instance a, const Instance& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <typename Pred>
Instance Filter(const Instance& items, Pred pred) {
  Instance out;
  for (const Item& it : items) {
    if (pred(it)) out.push_back(it);
  }
  return out;
}

}  // namespace pack2d

#endif  // PACK2D_GEOMETRY_HPP_
