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

#include <gtest/gtest.h>

#include <cstdint>
#include <map>
#include <string>

#include "pack2d/config.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/oracle.hpp"
#include "pack2d/rng.hpp"
#include "pack2d/solver.hpp"
#include "test_support.hpp"

namespace pack2d {
namespace {

using testing::MakeItem;

void ExpectValid(const Packing& p, const Instance& items) {
  const ValidationReport report = ValidatePacking(p, items);
  EXPECT_TRUE(report.ok()) << report.ToString();
}

// ---------------------------------------------------------------------------
// Shelf heuristic.

TEST(Shelf, HandExample) {
  // Two shelves of heights 3/5 and 1/2 cannot share a bin.
  const Instance items = {MakeItem(1, 3, 5, 3, 5), MakeItem(2, 2, 5, 1, 2),
                          MakeItem(3, 1, 2, 1, 2), MakeItem(4, 1, 2, 1, 5)};
  const Packing p = ShelfPack(items);
  ExpectValid(p, items);
  ASSERT_EQ(p.NumBins(), 2u);
  // Shelf one: items 1 and 2. Shelf two: items 3 and 4.
  EXPECT_EQ(p.bins[0].size(), 2u);
  EXPECT_EQ(p.bins[1].size(), 2u);
  EXPECT_EQ(p.bins[1].placements[1].x, Rational(1, 2));
}

TEST(Shelf, AlwaysValid) {
  Rng rng(3);
  for (int round = 0; round < 500; ++round) {
    const int n = static_cast<int>(rng.Uniform(0, 40));
    Instance items;
    for (int i = 0; i < n; ++i) {
      items.push_back({i + 1, rng.Grid(1, 64, 64), rng.Grid(1, 64, 64)});
    }
    const Packing p = ShelfPack(items);
    ExpectValid(p, items);
    EXPECT_LE(p.NumBins(), static_cast<size_t>(n));
  }
}

// ---------------------------------------------------------------------------
// Automatic packing.

TEST(Auto, SingleItemUsesTheTwoBinPacker) {
  const Instance items = {MakeItem(1, 1, 3, 2, 5)};
  const AutoResult r = PackAuto(items, {});
  ExpectValid(r.packing, items);
  EXPECT_TRUE(r.guaranteed);
  EXPECT_EQ(r.branch.rfind("opt1/", 0), 0u) << r.branch;
  EXPECT_LE(r.packing.NumBins(), 2u);
}

TEST(Auto, EmptyInstance) {
  const AutoResult r = PackAuto({}, {});
  EXPECT_EQ(r.packing.NumBins(), 0u);
  EXPECT_TRUE(r.guaranteed);
}

TEST(Auto, TwoBinOptimumUsesAtMostFourBins) {
  int guaranteed = 0;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Generated g = GenConstInstance(seed, 2, 8, 2);
    if (Vol(g.items) <= 1) continue;
    const AutoResult r = PackAuto(g.items, {});
    ExpectValid(r.packing, g.items);
    if (r.guaranteed) {
      ++guaranteed;
      EXPECT_LE(r.packing.NumBins(), 4u) << r.branch;
    }
  }
  EXPECT_GT(guaranteed, 30);
}

TEST(Auto, ManyLargeItemsFallBackToShelves) {
  // 100 squares of side 1/6: volume above two bins and far more large items
  // than the enumeration limit.
  Instance items;
  for (int i = 0; i < 100; ++i) items.push_back(MakeItem(i + 1, 1, 6, 1, 6));
  const AutoResult r = PackAuto(items, {});
  ExpectValid(r.packing, items);
  EXPECT_FALSE(r.guaranteed);
  EXPECT_EQ(r.branch, "fallback/shelf");
  EXPECT_EQ(r.packing.NumBins(), 3u);
  EXPECT_EQ(r.attempts.size(), 2u);
}

TEST(Auto, KTwoSkipsTheConstantPacker) {
  Instance items;
  for (int i = 0; i < 3; ++i) items.push_back(MakeItem(i + 1, 3, 4, 3, 4));
  SolveConfig c;
  c.k = 2;
  const AutoResult r = PackAuto(items, c);
  ExpectValid(r.packing, items);
  EXPECT_FALSE(r.guaranteed);
  EXPECT_EQ(r.attempts.size(), 1u);
  c.k = 4;
  const AutoResult r4 = PackAuto(items, c);
  EXPECT_TRUE(r4.guaranteed);
  EXPECT_EQ(r4.branch.rfind("optconst/l=3/", 0), 0u) << r4.branch;
  EXPECT_EQ(r4.packing.NumBins(), 3u);
}

TEST(Auto, RejectsAnInvalidConfig) {
  SolveConfig c;
  c.eps_opt1 = Rational(1, 100);
  EXPECT_THROW(PackAuto({}, c), PreconditionViolated);
}

TEST(Auto, SoundAndWithinTwiceTheOptimum) {
  std::map<std::string, int> branches;
  for (uint64_t seed = 0; seed < 150; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.n = 1 + static_cast<int>(seed % 6);
    spec.ell = 1 + static_cast<int>(seed % 3) % spec.n;
    spec.mode = seed % 2 ? GenMode::kShrink : GenMode::kGuillotine;
    const Generated g = GenInstance(spec);
    const AutoResult r = PackAuto(g.items, {});
    ExpectValid(r.packing, g.items);
    ++branches[r.branch.substr(0, r.branch.find('/'))];
    if (!r.guaranteed) continue;
    const auto opt = ExactMinBins(g.items, spec.ell);
    ASSERT_TRUE(opt.has_value());
    EXPECT_LE(r.packing.NumBins(), static_cast<size_t>(2 * opt->opt))
        << "seed " << seed << " " << r.branch;
  }
  EXPECT_GT(branches["opt1"], 0);
  EXPECT_GT(branches["optconst"], 0);
}

TEST(Auto, Deterministic) {
  const Generated g = GenConstInstance(9, 2, 10, 3);
  EXPECT_EQ(PackAuto(g.items, {}).packing, PackAuto(g.items, {}).packing);
}

}  // namespace
}  // namespace pack2d
