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

// Ground truth for small instances: an exact minimum-bin solver and seeded
// generators whose instances come with a witness packing.

#ifndef PACK2D_ORACLE_HPP_
#define PACK2D_ORACLE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/knapsack.hpp"
#include "pack2d/rng.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

struct MinBinsResult {
  int opt = 0;
  Packing witness;
};

// Fewest unit bins for the instance, found by partitioning into subsets that
// each pass the exact single-bin check. std::nullopt when more than max_bins
// are needed. Throws InstanceTooLarge above `limit` items or when a subset
// check runs out of budget.
inline std::optional<MinBinsResult> ExactMinBins(const Instance& items,
                                                 int max_bins, int limit = 8,
                                                 ExactOptions opts = {}) {
  const int n = static_cast<int>(items.size());
  if (n > limit || n > 20) {
    throw InstanceTooLarge(std::to_string(n) + " items exceed the oracle limit " +
                           std::to_string(limit));
  }
  opts.exact_limit = std::max(opts.exact_limit, n);
  const uint32_t full = (1u << n) - 1;
  auto subset = [&](uint32_t mask) {
    Instance out;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) out.push_back(items[i]);
    }
    return out;
  };

  // Subsets in increasing numeric order see all their subsets first.
  std::vector<char> fits(full + 1, 0);
  std::vector<BinLayout> layouts(full + 1);
  fits[0] = 1;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    bool blocked = false;
    for (int i = 0; i < n && !blocked; ++i) {
      if (mask >> i & 1) blocked = !fits[mask ^ (1u << i)];
    }
    if (blocked) continue;
    if (auto layout = ExactPackSingleRegion(subset(mask), 1, 1, opts)) {
      fits[mask] = 1;
      layouts[mask] = std::move(*layout);
    }
  }

  constexpr int kInf = 1 << 20;
  std::vector<int> best(full + 1, kInf);
  std::vector<uint32_t> choice(full + 1, 0);
  best[0] = 0;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    const uint32_t low = mask & (~mask + 1);
    for (uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || !fits[sub]) continue;
      const int cand = best[mask ^ sub] + 1;
      if (cand < best[mask]) {
        best[mask] = cand;
        choice[mask] = sub;
      }
    }
  }
  if (best[full] > max_bins) return std::nullopt;
  MinBinsResult out;
  out.opt = best[full];
  for (uint32_t mask = full; mask; mask ^= choice[mask]) {
    out.witness.bins.push_back(layouts[choice[mask]]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators.

enum class GenMode { kGuillotine, kShrink };

struct GeneratorSpec {
  uint64_t seed = 0;
  int n = 1;
  int ell = 1;
  GenMode mode = GenMode::kGuillotine;
  int64_t den = 64;
};

struct Generated {
  Instance items;
  Packing witness;
};

namespace internal {

// Rectangle on a den x den grid together with its witness position.
struct Piece {
  int64_t w, h, x, y;
  int bin = 0;
  bool frozen = false;
};

// Random guillotine cuts on unfrozen pieces until there are `n` pieces or no
// piece can be cut further.
inline void CutPieces(Rng& rng, std::vector<Piece>& pieces, int n) {
  for (int tries = 0; static_cast<int>(pieces.size()) < n && tries < 100000;
       ++tries) {
    const size_t k = static_cast<size_t>(
        rng.Uniform(0, static_cast<int64_t>(pieces.size()) - 1));
    Piece p = pieces[k];
    if (p.frozen) continue;
    const bool vertical = rng.Bernoulli(1, 2);
    const int64_t side = vertical ? p.w : p.h;
    if (side < 2) continue;
    const int64_t cut = rng.Uniform(1, side - 1);
    Piece q = p;
    if (vertical) {
      p.w = cut;
      q.w -= cut;
      q.x += cut;
    } else {
      p.h = cut;
      q.h -= cut;
      q.y += cut;
    }
    pieces[k] = p;
    pieces.push_back(q);
  }
}

// Items with ids 1..n in shuffled order over the pieces. In shrink mode each
// unfrozen side is scaled by a random factor k/8, which keeps the witness
// valid.
inline Generated PiecesToInstance(Rng& rng, const std::vector<Piece>& pieces,
                                  int bins, int64_t den, bool shrink) {
  std::vector<int> ids(pieces.size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i) + 1;
  rng.Shuffle(ids);
  Generated g;
  g.witness.bins.resize(static_cast<size_t>(bins));
  for (size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    Scalar w = Rational(p.w, den), h = Rational(p.h, den);
    if (shrink && !p.frozen) {
      w *= Rational(rng.Uniform(1, 8), 8);
      h *= Rational(rng.Uniform(1, 8), 8);
    }
    const Item it{ids[i], w, h};
    g.items.push_back(it);
    g.witness.bins[static_cast<size_t>(p.bin)].Place(it, Rational(p.x, den),
                                                     Rational(p.y, den));
  }
  std::sort(g.items.begin(), g.items.end(), ById);
  return g;
}

inline Generated MaybeTransposed(Rng& rng, Generated g, bool allow) {
  if (allow && rng.Bernoulli(1, 2)) {
    g.items = Transposed(g.items);
    g.witness = Transposed(g.witness);
  }
  return g;
}

}  // namespace internal

// Guillotine split of `ell` unit bins into n pieces, each bin getting at
// least one. Requires 1 <= ell <= n and den >= 2.
inline Generated GenInstance(const GeneratorSpec& spec) {
  if (spec.ell < 1 || spec.n < spec.ell || spec.den < 2) {
    throw PreconditionViolated("generator needs 1 <= ell <= n and den >= 2");
  }
  Rng rng(spec.seed);
  std::vector<int> count(static_cast<size_t>(spec.ell), 1);
  for (int i = spec.ell; i < spec.n; ++i) {
    ++count[static_cast<size_t>(rng.Uniform(0, spec.ell - 1))];
  }
  std::vector<internal::Piece> all;
  for (int b = 0; b < spec.ell; ++b) {
    std::vector<internal::Piece> pieces = {{spec.den, spec.den, 0, 0, b}};
    internal::CutPieces(rng, pieces, count[static_cast<size_t>(b)]);
    all.insert(all.end(), pieces.begin(), pieces.end());
  }
  return internal::PiecesToInstance(rng, all, spec.ell, spec.den,
                                    spec.mode == GenMode::kShrink);
}

// One-bin instances biased toward the branches of the two-bin packer.
enum class Opt1Bias {
  kPlantedWidth,   // a bottom strip of height <= 3/16 holds all wide items
  kPlantedHeight,  // a full-width strip of height >= 5/16 blocks the width
                   // axis; high items sit in a column of width <= 1/8
  kBigSlivers,     // one big item with both sides >= 1 - 1/256 plus slivers
};

// Requires n >= 4 for the planted modes and n >= 2 for kBigSlivers; smaller
// n falls back to a plain guillotine instance.
inline Generated GenOpt1Instance(uint64_t seed, int n, Opt1Bias bias,
                                 bool shrink) {
  Rng rng(seed);
  using internal::Piece;
  std::vector<Piece> pieces;
  int64_t den = 64;
  bool allow_transpose = true;
  switch (bias) {
    case Opt1Bias::kPlantedWidth: {
      if (n < 3) break;
      const int64_t t = rng.Uniform(4, 12);
      pieces = {{64, t, 0, 0}, {32, 64 - t, 0, t}, {32, 64 - t, 32, t}};
      break;
    }
    case Opt1Bias::kPlantedHeight: {
      if (n < 4) break;
      const int64_t t = rng.Uniform(20, 32);
      const int64_t c = rng.Uniform(2, 8);
      const int64_t mid = t + (64 - t) / 2;
      pieces = {{64, t, 0, 0, 0, true},
                {c, 64 - t, 0, t},
                {64 - c, mid - t, c, t},
                {64 - c, 64 - mid, c, mid}};
      allow_transpose = false;
      break;
    }
    case Opt1Bias::kBigSlivers: {
      if (n < 2) break;
      den = 512;
      const int64_t a = rng.Uniform(1, 2), b = rng.Uniform(1, 2);
      pieces = {{den - a, den - b, 0, 0, 0, true}, {a, den, den - a, 0}};
      if (n >= 3) pieces.push_back({den - a, b, 0, den - b});
      break;
    }
  }
  if (pieces.empty()) {
    return GenInstance({seed, n, 1, shrink ? GenMode::kShrink
                                           : GenMode::kGuillotine});
  }
  internal::CutPieces(rng, pieces, n);
  return internal::MaybeTransposed(
      rng, internal::PiecesToInstance(rng, pieces, 1, den, shrink),
      allow_transpose);
}

// Instances with witness `ell` bins that mix large pieces with tiny slivers.
// Each bin is cut in one of six styles: random, two columns, two rows, a
// column beside rows, an exact half column beside half-height pieces, or (at
// most once) random pieces shrunk by factors in [1/2, 1]. Bins with slivers
// lose a one-unit strip along the top or right edge, cut into pieces of area
// at most 1/1082 on the default grid. Requires 1 <= ell, ell + tiny <= n,
// den >= 64. The optimum is ell whenever Vol > ell - 1.
inline Generated GenConstInstance(uint64_t seed, int ell, int n, int tiny,
                                  int64_t den = 1024) {
  if (ell < 1 || tiny < 0 || ell + tiny > n || den < 64) {
    throw PreconditionViolated(
        "generator needs 1 <= ell, ell + tiny <= n and den >= 64");
  }
  Rng rng(seed);
  using internal::Piece;
  std::vector<int> large(static_cast<size_t>(ell), 1);
  std::vector<int> slivers(static_cast<size_t>(ell), 0);
  for (int i = ell; i < n - tiny; ++i) {
    ++large[static_cast<size_t>(rng.Uniform(0, ell - 1))];
  }
  for (int i = 0; i < tiny; ++i) {
    ++slivers[static_cast<size_t>(rng.Uniform(0, ell - 1))];
  }
  // Sliver length cap: length / den^2 <= 1 / 1082 on the default grid.
  const int64_t cap = den * den / 1082;
  std::vector<Piece> all;
  bool sparse_used = false;
  for (int b = 0; b < ell; ++b) {
    const int t = slivers[static_cast<size_t>(b)];
    const bool top = rng.Bernoulli(1, 2);
    Piece body{den, den, 0, 0, b};
    std::vector<Piece> strip;
    if (t > 0) {
      if (top) {
        body.h -= 1;
        strip.push_back({den, 1, 0, den - 1, b});
      } else {
        body.w -= 1;
        strip.push_back({1, den, den - 1, 0, b});
      }
      while (static_cast<int>(strip.size()) < t) {
        Piece& p = strip.back();
        int64_t& len = top ? p.w : p.h;
        if (len < 2) break;
        const int64_t cut = rng.Uniform(1, len - 1);
        Piece q = p;
        len = cut;
        if (top) {
          q.w -= cut;
          q.x += cut;
        } else {
          q.h -= cut;
          q.y += cut;
        }
        strip.push_back(q);
      }
      for (Piece& p : strip) {
        int64_t& len = top ? p.w : p.h;
        len = std::min(len, cap);
        p.frozen = true;
      }
    }
    std::vector<Piece> pieces = {body};
    const int want = large[static_cast<size_t>(b)];
    int64_t style = rng.Uniform(0, 5);
    if (want < 2 && style != 5) style = 0;
    if (style == 5 && sparse_used) style = 0;
    const int64_t mid = style == 4 ? body.w / 2
                                   : rng.Uniform(body.w * 3 / 8, body.w * 5 / 8);
    const int64_t mid_h =
        style == 4 ? den / 2 : rng.Uniform(body.h * 3 / 8, body.h * 5 / 8);
    if (style == 1) {
      pieces = {{mid, body.h, 0, 0, b}, {body.w - mid, body.h, mid, 0, b}};
    } else if (style == 2) {
      pieces = {{body.w, mid_h, 0, 0, b},
                {body.w, body.h - mid_h, 0, mid_h, b}};
    } else if (style == 3 || style == 4) {
      pieces = {{mid, body.h, 0, 0, b, true},
                {body.w - mid, mid_h, mid, 0, b},
                {body.w - mid, body.h - mid_h, mid, mid_h, b}};
      if (want == 2) {
        pieces.pop_back();
        pieces.back().h = body.h;
      }
    }
    internal::CutPieces(rng, pieces, want);
    if (style == 5) {
      sparse_used = true;
      for (Piece& p : pieces) {
        p.w = std::max<int64_t>(1, p.w * rng.Uniform(4, 8) / 8);
        p.h = std::max<int64_t>(1, p.h * rng.Uniform(4, 8) / 8);
        p.frozen = true;
      }
    }
    all.insert(all.end(), pieces.begin(), pieces.end());
    all.insert(all.end(), strip.begin(), strip.end());
  }
  return internal::MaybeTransposed(
      rng, internal::PiecesToInstance(rng, all, ell, den, false), true);
}

}  // namespace pack2d

#endif  // PACK2D_ORACLE_HPP_
