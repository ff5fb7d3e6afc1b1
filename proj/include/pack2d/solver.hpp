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

// Automatic packing: the two-bin packer, then the constant-optimum packer for
// l = 2..k-1, then an unguaranteed shelf heuristic.

#ifndef PACK2D_SOLVER_HPP_
#define PACK2D_SOLVER_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "pack2d/config.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/opt1.hpp"
#include "pack2d/optconst.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

struct AutoResult {
  Packing packing;
  // "opt1/<branch>", "optconst/l=<l>/<route>" or "fallback/shelf".
  std::string branch;
  // True when the packing comes with the factor-two bound; false for the
  // shelf heuristic.
  bool guaranteed = false;
  // One line per failed attempt.
  std::vector<std::string> attempts;
};

// Items by non-increasing height onto shelves (first fit by width), shelves
// first fit into bins by height. Always valid for sides in (0, 1].
inline Packing ShelfPack(const Instance& items) {
  struct Shelf {
    Scalar height, used;
    Instance items;
  };
  std::vector<Shelf> shelves;
  for (const Item& it : Sorted(items, ByHeightDesc)) {
    auto s = std::find_if(shelves.begin(), shelves.end(), [&](const Shelf& sh) {
      return sh.used + it.w <= 1;
    });
    if (s == shelves.end()) {
      shelves.push_back({it.h, 0, {}});
      s = shelves.end() - 1;
    }
    s->items.push_back(it);
    s->used += it.w;
  }
  Packing p;
  std::vector<Scalar> filled;
  for (const Shelf& sh : shelves) {
    size_t b = 0;
    while (b < filled.size() && filled[b] + sh.height > 1) ++b;
    if (b == filled.size()) {
      filled.push_back(0);
      p.bins.emplace_back();
    }
    Scalar x = 0;
    for (const Item& it : sh.items) {
      p.bins[b].Place(it, x, filled[b]);
      x += it.w;
    }
    filled[b] += sh.height;
  }
  return p;
}

inline AutoResult PackAuto(const Instance& items, const SolveConfig& config) {
  config.Validate();
  AutoResult out;
  auto accept = [&](Packing p, std::string branch) {
    const ValidationReport report = ValidatePacking(p, items);
    if (!report.ok()) {
      out.attempts.push_back(branch + ": invalid packing: " +
                             report.ToString());
      return false;
    }
    out.packing = std::move(p);
    out.branch = std::move(branch);
    out.guaranteed = true;
    return true;
  };
  try {
    Opt1Result r = PackOpt1(items, config.eps_opt1, config.Exact());
    if (accept(std::move(r.packing),
               std::string("opt1/") + BranchName(r.branch))) {
      return out;
    }
  } catch (const Error& e) {
    out.attempts.push_back(std::string("opt1: ") + e.what());
  }
  for (int ell = 2; ell < config.k; ++ell) {
    const std::string name = "optconst/l=" + std::to_string(ell);
    try {
      OptConstResult r = PackOptConst(items, ell, config.k, config.Const());
      if (r.packing.NumBins() > static_cast<size_t>(2 * ell)) {
        out.attempts.push_back(name + ": too many bins");
        continue;
      }
      if (accept(std::move(r.packing), name + "/" + r.route)) return out;
    } catch (const Error& e) {
      out.attempts.push_back(name + ": " + e.what());
    }
  }
  out.packing = ShelfPack(items);
  out.branch = "fallback/shelf";
  out.guaranteed = false;
  return out;
}

}  // namespace pack2d

#endif  // PACK2D_SOLVER_HPP_
