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

// Acceptance harness. Prints one PASS or FAIL line per criterion followed by
// its counters and exits non-zero when any criterion fails. Every check is
// exact; the thresholds below are the pinned sample sizes and counts.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pack2d/classify.hpp"
#include "pack2d/config.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/io.hpp"
#include "pack2d/knapsack.hpp"
#include "pack2d/opt1.hpp"
#include "pack2d/optconst.hpp"
#include "pack2d/oracle.hpp"
#include "pack2d/rng.hpp"
#include "pack2d/solver.hpp"
#include "pack2d/steinberg.hpp"
#include "test_support.hpp"

namespace pack2d {
namespace {

// Pinned sample sizes and tolerances. Tolerance is zero everywhere: all
// comparisons are on exact rationals.
constexpr int kLayouts = 1200;          // criterion 1
constexpr int kConditionSets = 1200;    // criterion 2
constexpr int kHalfAreaSets = 600;      // criterion 3
constexpr int kKnapsackInstances = 320; // criterion 4
constexpr int kKnapsackMaxN = 8;
constexpr int kOpt1Instances = 600;     // criterion 5, also 6 and 7
constexpr int kOpt1MinCertified = 500;
constexpr int kOpt1MaxN = 12;
constexpr int kConstTwo = 240;          // criterion 8
constexpr int kConstThree = 70;
constexpr int kConstMinTwo = 200;
constexpr int kConstMinThree = 50;
constexpr int kConstMaxN = 14;
constexpr int kConstMaxLarge = 10;
constexpr int kConstK = 3;
constexpr int kAutoInstances = 300;     // criterion 9
constexpr int kAutoMaxN = 8;
constexpr int kDeterminismRuns = 60;    // criterion 10

const Scalar kEpsOpt1 = Rational(1, 256);

struct Outcome {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Outcome> g_outcomes;

void Report(int id, bool pass, const std::string& detail) {
  g_outcomes.push_back({id, pass, detail});
  std::printf("criterion %d: %s; %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string Counts(const std::map<std::string, int>& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : m) {
    os << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

int64_t GridOf(const Scalar& v, int64_t den) {
  return Scalar(v * den).get_num().get_si();
}

// ---------------------------------------------------------------------------
// 1. Validator against an integer-grid checker; transpose involution.

// Independent verdict: containment, pairwise open overlap, and exact
// coverage of the instance ids, all on integer grid coordinates.
bool GridVerdict(const Packing& p, const Instance& items, int64_t den) {
  std::multiset<int> packed;
  for (const BinLayout& bin : p.bins) {
    std::vector<std::pair<int, testing::GridRect>> rects;
    for (const Placement& pl : bin.placements) {
      const int64_t x0 = GridOf(pl.x, den), y0 = GridOf(pl.y, den);
      const int64_t x1 = x0 + GridOf(pl.item.w, den);
      const int64_t y1 = y0 + GridOf(pl.item.h, den);
      if (x1 > den || y1 > den) return false;
      rects.push_back({pl.item.id, {x0, y0, x1, y1}});
      packed.insert(pl.item.id);
    }
    if (!testing::GridOverlaps(rects).empty()) return false;
  }
  std::multiset<int> want;
  for (const Item& it : items) want.insert(it.id);
  return packed == want;
}

void Criterion1() {
  Rng rng(101);
  int agree = 0, disagree = 0, valid = 0, involution_fail = 0;
  for (int t = 0; t < kLayouts; ++t) {
    const int64_t den = rng.Pick(std::vector<int64_t>{2, 4, 8, 16});
    const int n = static_cast<int>(rng.Uniform(0, 8));
    const int bins = static_cast<int>(rng.Uniform(1, 3));
    Instance items;
    Packing p;
    p.bins.resize(static_cast<size_t>(bins));
    // Half of the layouts come from a guillotine cut so valid ones are
    // common; the rest are random placements.
    if (rng.Bernoulli(1, 2)) {
      for (int b = 0; b < bins; ++b) {
        for (const auto& g : testing::GuillotinePieces(rng, n, den, den)) {
          const Item it{static_cast<int>(items.size()), Rational(g.w, den),
                        Rational(g.h, den)};
          items.push_back(it);
          p.bins[static_cast<size_t>(b)].Place(it, Rational(g.x, den),
                                               Rational(g.y, den));
        }
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const Item it{i, rng.Grid(1, den, den), rng.Grid(1, den, den)};
        items.push_back(it);
        p.bins[static_cast<size_t>(rng.Uniform(0, bins - 1))].Place(
            it, rng.Grid(0, den - 1, den), rng.Grid(0, den - 1, den));
      }
    }
    // Perturb coverage now and then: drop or duplicate a placement.
    if (!items.empty() && rng.Bernoulli(1, 6)) {
      BinLayout& bin = p.bins[0];
      if (!bin.placements.empty()) {
        if (rng.Bernoulli(1, 2)) {
          bin.placements.pop_back();
        } else {
          bin.placements.push_back(bin.placements.front());
        }
      }
    }
    const bool lib = ValidatePacking(p, items).ok();
    const bool grid = GridVerdict(p, items, den);
    (lib == grid ? agree : disagree)++;
    valid += lib;
    const Packing tt = Transposed(Transposed(p));
    if (!(tt == p) ||
        ValidatePacking(Transposed(p), Transposed(items)).ok() != lib) {
      ++involution_fail;
    }
  }
  std::ostringstream os;
  os << "layouts=" << kLayouts << " agree=" << agree
     << " disagree=" << disagree << " valid=" << valid
     << " transpose_failures=" << involution_fail;
  Report(1, disagree == 0 && involution_fail == 0 && valid > 0 &&
                valid < kLayouts,
         os.str());
}

// ---------------------------------------------------------------------------
// 2. Strip packer completeness.

void Criterion2() {
  Rng rng(202);
  int ok = 0, fail = 0;
  for (int t = 0; t < kConditionSets; ++t) {
    const Instance items = testing::ConditionSet(rng, 14);
    if (!SteinbergCondition(items, 1, 1)) {
      ++fail;
      continue;
    }
    try {
      const BinLayout l = SteinbergPack(items, 1, 1);
      if (ValidateBin(l).ok() && testing::SameItems(l, items)) {
        ++ok;
      } else {
        ++fail;
      }
    } catch (const Error&) {
      ++fail;
    }
  }
  std::ostringstream os;
  os << "sets=" << kConditionSets << " packed=" << ok << " failures=" << fail;
  Report(2, fail == 0 && ok >= 1000, os.str());
}

// ---------------------------------------------------------------------------
// 3. Half-area sets without wide items.

void Criterion3() {
  Rng rng(303);
  int ok = 0, fail = 0;
  for (int t = 0; t < kHalfAreaSets; ++t) {
    const Instance items = testing::NoWideHalfAreaSet(rng, 14);
    try {
      const BinLayout l = PackNoWideHalfArea(items);
      if (ValidateBin(l).ok() && testing::SameItems(l, items)) {
        ++ok;
      } else {
        ++fail;
      }
    } catch (const Error&) {
      ++fail;
    }
  }
  std::ostringstream os;
  os << "sets=" << kHalfAreaSets << " packed=" << ok << " failures=" << fail;
  Report(3, fail == 0 && ok >= 500, os.str());
}

// ---------------------------------------------------------------------------
// 4. Knapsack exactness against subset enumeration with a normal-pattern
// placement search.

void Criterion4() {
  Rng rng(404);
  int equal = 0, differ = 0, not_exact = 0;
  for (int t = 0; t < kKnapsackInstances; ++t) {
    const int64_t den = rng.Pick(std::vector<int64_t>{4, 6, 8, 10});
    const int n = static_cast<int>(rng.Uniform(1, kKnapsackMaxN));
    const int64_t a = rng.Uniform(den / 2, den), b = rng.Uniform(den / 2, den);
    Instance items;
    for (int i = 0; i < n; ++i) {
      items.push_back({i, rng.Grid(1, den, den), rng.Grid(1, den, den)});
    }
    Scalar best = 0;
    for (uint32_t m = 1; m < (1u << n); ++m) {
      Instance set;
      for (int i = 0; i < n; ++i) {
        if (m >> i & 1) set.push_back(items[static_cast<size_t>(i)]);
      }
      const Scalar area = Vol(set);
      if (area <= best) continue;
      if (testing::NormalPatternOracle(testing::GridDims(set, den), a, b)
              .Feasible()) {
        best = area;
      }
    }
    const KnapsackResult r =
        MaxAreaPack(items, Rational(a, den), Rational(b, den), kEpsOpt1);
    not_exact += !r.exact;
    (r.profit == best && Vol(r.selected) == best ? equal : differ)++;
  }
  std::ostringstream os;
  os << "instances=" << kKnapsackInstances << " equal=" << equal
     << " differ=" << differ << " not_exact=" << not_exact;
  Report(4, differ == 0 && not_exact == 0, os.str());
}

// ---------------------------------------------------------------------------
// 5, 6, 7. One-bin instances.

struct Opt1Case {
  Instance items;
  std::string source;
};

std::vector<Opt1Case> Opt1Suite() {
  std::vector<Opt1Case> out;
  Rng rng(505);
  const std::vector<std::pair<Opt1Bias, std::string>> biases = {
      {Opt1Bias::kPlantedWidth, "planted-width"},
      {Opt1Bias::kPlantedHeight, "planted-height"},
      {Opt1Bias::kBigSlivers, "big-slivers"}};
  for (int t = 0; t < kOpt1Instances; ++t) {
    const uint64_t seed = 50000 + static_cast<uint64_t>(t);
    const int n = static_cast<int>(rng.Uniform(1, kOpt1MaxN));
    const bool shrink = rng.Bernoulli(1, 3);
    const int kind = t % 4;
    Generated g;
    std::string source;
    if (kind == 3) {
      g = GenInstance({seed, n, 1,
                       shrink ? GenMode::kShrink : GenMode::kGuillotine});
      source = "guillotine";
    } else {
      g = GenOpt1Instance(seed, n, biases[static_cast<size_t>(kind)].first,
                          shrink);
      source = biases[static_cast<size_t>(kind)].second;
    }
    // The one-bin witness certifies the optimum.
    if (g.items.empty() || g.witness.NumBins() != 1 ||
        !ValidatePacking(g.witness, g.items).ok()) {
      continue;
    }
    out.push_back({g.items, source});
  }
  return out;
}

void Criterion5to7() {
  const std::vector<Opt1Case> suite = Opt1Suite();
  std::map<std::string, int> branches, sources;
  for (Opt1Branch b :
       {Opt1Branch::kSmallHeightWidth, Opt1Branch::kSmallHeightHeight,
        Opt1Branch::kLargeW, Opt1Branch::kSmallWCase1,
        Opt1Branch::kSmallWCase2, Opt1Branch::kSmallWCase3}) {
    branches[BranchName(b)] = 0;
  }
  int packed = 0, failed = 0, oracle_checked = 0, oracle_mismatch = 0;
  std::string first_failure;
  // Criterion 6 and 7 counters.
  int wh_success = 0, wh_violation = 0, wh_guess_failed = 0, wh_skipped = 0;
  int area_checked = 0, area_violation = 0, area_violation_big = 0;
  int height_violation = 0;
  std::string area_example;
  for (const Opt1Case& c : suite) {
    ++sources[c.source];
    if (c.items.size() <= 8) {
      ++oracle_checked;
      const auto opt = ExactMinBins(c.items, 1);
      if (!opt || opt->opt != 1) ++oracle_mismatch;
    }
    try {
      const Opt1Result r = PackOpt1(c.items, kEpsOpt1);
      if (ValidatePacking(r.packing, c.items).ok() &&
          r.packing.NumBins() <= 2) {
        ++packed;
        ++branches[BranchName(r.branch)];
      } else {
        ++failed;
      }
    } catch (const Error& e) {
      ++failed;
      if (first_failure.empty()) first_failure = e.what();
    }

    // 6. Wide stack plus half the high width, in both orientations.
    for (const Instance& items : {c.items, Transposed(c.items)}) {
      const ItemClasses cls = Classify(items);
      if (cls.high_only.empty()) continue;
      try {
        const WideHighResult r =
            PackWideHigh(cls.Wide(), cls.high_only, kEpsOpt1);
        const std::set<int> high_ids = IdSet(cls.high_only);
        bool subset = true;
        for (const Item& it : r.h_prime) subset = subset && high_ids.count(it.id);
        const bool layout_ok =
            ValidateBin(r.layout).ok() &&
            testing::SameItems(r.layout, Concat(cls.Wide(), r.h_prime));
        if (subset && layout_ok &&
            TotalWidth(r.h_prime) > TotalWidth(cls.high_only) / 2 - kEpsOpt1) {
          ++wh_success;
        } else {
          ++wh_violation;
        }
      } catch (const GuessFailed&) {
        ++wh_guess_failed;
      } catch (const InstanceTooLarge&) {
        ++wh_skipped;
      }
    }

    // 7. Area guarantee when both delta searches fail.
    if (!FindFeasibleDelta(c.items, kEpsOpt1, Axis::kWidth) &&
        !FindFeasibleDelta(c.items, kEpsOpt1, Axis::kHeight)) {
      ++area_checked;
      const ItemClasses cls = Classify(c.items);
      if (!AreaGuaranteeCheck(c.items, kEpsOpt1)) {
        ++area_violation;
        area_violation_big += !cls.big.empty();
        if (area_example.empty()) {
          std::ostringstream os;
          os << "Vol(W u H)=" << ToString(Vol(Concat(cls.wide_only,
                                                     cls.High())))
             << " w(H)=" << ToString(TotalWidth(cls.High()))
             << " h(W)=" << ToString(TotalHeight(cls.Wide()))
             << " big=" << cls.big.size();
          area_example = os.str();
        }
      }
      const Scalar bound = Rational(1, 4) - kEpsOpt1 / 2;
      if (!(TotalHeight(cls.Wide()) > bound) ||
          !(TotalWidth(cls.High()) > bound)) {
        ++height_violation;
      }
    }
  }
  const int certified = static_cast<int>(suite.size());
  bool all_branches = true;
  for (const auto& [name, count] : branches) {
    all_branches = all_branches && count > 0;
  }
  {
    std::ostringstream os;
    os << "certified=" << certified << " packed=" << packed
       << " failed=" << failed << " oracle_checked=" << oracle_checked
       << " oracle_mismatch=" << oracle_mismatch << "; branches: "
       << Counts(branches) << "; sources: " << Counts(sources);
    if (!first_failure.empty()) os << "; first failure: " << first_failure;
    Report(5,
           certified >= kOpt1MinCertified && failed == 0 &&
               oracle_mismatch == 0 && all_branches,
           os.str());
  }
  {
    std::ostringstream os;
    os << "successes=" << wh_success << " violations=" << wh_violation
       << " guess_failed=" << wh_guess_failed
       << " over_coarse_limit=" << wh_skipped;
    Report(6, wh_violation == 0 && wh_success > 0, os.str());
  }
  {
    std::ostringstream os;
    os << "checked=" << area_checked << " area_violations=" << area_violation
       << " (with a big item: " << area_violation_big
       << ") height_violations=" << height_violation;
    if (!area_example.empty()) os << "; example: " << area_example;
    Report(7, area_checked > 0 && area_violation == 0 && height_violation == 0,
           os.str());
  }
}

// ---------------------------------------------------------------------------
// 8. Constant optimum.

struct ConstStats {
  int generated = 0, certified = 0, packed = 0, failed = 0, oracle_checked = 0;
  int oracle_mismatch = 0, too_many_large = 0;
  std::map<int, int> cases;
  std::string first_failure;
};

void RunConst(int ell, int rounds, uint64_t offset, ConstStats& st) {
  const Scalar eps = OptConstEpsilon(kConstK);
  for (int s = 0; s < rounds; ++s) {
    Rng rng(offset + static_cast<uint64_t>(s) * 7 + 1);
    const int n = static_cast<int>(rng.Uniform(ell + 1, kConstMaxN));
    const int lo = std::max(0, n - kConstMaxLarge);
    const int tiny = static_cast<int>(
        rng.Uniform(lo, std::max(lo, std::min(n - ell, 5))));
    const Generated g =
        GenConstInstance(offset + 1000 + static_cast<uint64_t>(s), ell, n, tiny);
    ++st.generated;
    const int large = static_cast<int>(
        Filter(g.items, [&](const Item& it) { return IsLarge(it, eps); })
            .size());
    if (large > kConstMaxLarge) {
      ++st.too_many_large;
      continue;
    }
    // Witness with ell bins and volume above ell - 1 pin the optimum.
    if (!ValidatePacking(g.witness, g.items).ok() ||
        static_cast<int>(g.witness.NumBins()) != ell ||
        !(Vol(g.items) > ell - 1)) {
      continue;
    }
    ++st.certified;
    if (g.items.size() <= 8) {
      ++st.oracle_checked;
      const auto opt = ExactMinBins(g.items, ell);
      if (!opt || opt->opt != ell) ++st.oracle_mismatch;
    }
    try {
      const OptConstResult r = PackOptConst(g.items, ell, kConstK);
      if (ValidatePacking(r.packing, g.items).ok() &&
          static_cast<int>(r.packing.NumBins()) <= 2 * ell) {
        ++st.packed;
        ++st.cases[r.dispatch_case];
      } else {
        ++st.failed;
      }
    } catch (const Error& e) {
      ++st.failed;
      if (st.first_failure.empty()) st.first_failure = e.what();
    }
  }
}

void Criterion8() {
  ConstStats two, three;
  RunConst(2, kConstTwo, 800000, two);
  RunConst(3, kConstThree, 900000, three);
  std::map<std::string, int> cases;
  for (int c = 1; c <= 4; ++c) {
    cases["case-" + std::to_string(c)] = two.cases[c] + three.cases[c];
  }
  bool all_cases = true;
  for (const auto& [name, count] : cases) all_cases = all_cases && count > 0;
  std::ostringstream os;
  os << "opt2: certified=" << two.certified << " packed=" << two.packed
     << " failed=" << two.failed << "; opt3: certified=" << three.certified
     << " packed=" << three.packed << " failed=" << three.failed
     << "; oracle_checked=" << two.oracle_checked + three.oracle_checked
     << " oracle_mismatch=" << two.oracle_mismatch + three.oracle_mismatch
     << " over_large_limit=" << two.too_many_large + three.too_many_large
     << "; " << Counts(cases);
  const std::string ff =
      two.first_failure.empty() ? three.first_failure : two.first_failure;
  if (!ff.empty()) os << "; first failure: " << ff;
  Report(8,
         two.certified >= kConstMinTwo && three.certified >= kConstMinThree &&
             two.failed == 0 && three.failed == 0 &&
             two.oracle_mismatch + three.oracle_mismatch == 0 && all_cases,
         os.str());
}

// ---------------------------------------------------------------------------
// 9. End to end against the exact optimum.

void Criterion9() {
  Rng rng(909);
  int guaranteed = 0, within = 0, beyond = 0, fallback = 0, invalid = 0;
  for (int t = 0; t < kAutoInstances; ++t) {
    const int n = static_cast<int>(rng.Uniform(1, kAutoMaxN));
    Instance items;
    if (t % 5 == 4 && n >= 3) {
      const int ell = static_cast<int>(rng.Uniform(2, std::min(3, n - 1)));
      items = GenConstInstance(90000 + static_cast<uint64_t>(t), ell, n,
                               static_cast<int>(rng.Uniform(0, n - ell)))
                  .items;
    } else {
      GeneratorSpec spec;
      spec.seed = 9000 + static_cast<uint64_t>(t);
      spec.n = n;
      spec.ell = static_cast<int>(rng.Uniform(1, std::min(3, n)));
      spec.mode = rng.Bernoulli(1, 2) ? GenMode::kShrink : GenMode::kGuillotine;
      items = GenInstance(spec).items;
    }
    const AutoResult r = PackAuto(items, SolveConfig{});
    if (!ValidatePacking(r.packing, items).ok()) {
      ++invalid;
      continue;
    }
    if (!r.guaranteed) {
      ++fallback;
      continue;
    }
    ++guaranteed;
    const auto opt = ExactMinBins(items, n);
    if (opt && static_cast<int>(r.packing.NumBins()) <= 2 * opt->opt) {
      ++within;
    } else {
      ++beyond;
    }
  }
  std::ostringstream os;
  os << "instances=" << kAutoInstances << " guaranteed=" << guaranteed
     << " within_2opt=" << within << " beyond=" << beyond
     << " fallback=" << fallback << " invalid=" << invalid;
  Report(9, beyond == 0 && invalid == 0 && guaranteed > 0, os.str());
}

// ---------------------------------------------------------------------------
// 10. Determinism of the packing files.

void Criterion10() {
  int identical = 0, differ = 0;
  for (int t = 0; t < kDeterminismRuns; ++t) {
    Instance items;
    if (t % 2) {
      items = GenConstInstance(7000 + static_cast<uint64_t>(t), 2 + t % 2,
                               10, 3)
                  .items;
    } else {
      GeneratorSpec spec;
      spec.seed = 7000 + static_cast<uint64_t>(t);
      spec.n = 1 + t % 12;
      spec.ell = 1 + (t / 2) % 2 % spec.n;
      items = GenInstance(spec).items;
    }
    const std::string first = FormatPacking(PackAuto(items, {}).packing);
    const Instance again = ParseInstance(FormatInstance(items));
    const std::string second = FormatPacking(PackAuto(again, {}).packing);
    (first == second ? identical : differ)++;
  }
  std::ostringstream os;
  os << "runs=" << kDeterminismRuns << " identical=" << identical
     << " differ=" << differ;
  Report(10, differ == 0, os.str());
}

}  // namespace
}  // namespace pack2d

int main() {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  pack2d::Criterion1();
  pack2d::Criterion2();
  pack2d::Criterion3();
  pack2d::Criterion4();
  pack2d::Criterion5to7();
  pack2d::Criterion8();
  pack2d::Criterion9();
  pack2d::Criterion10();
  int failed = 0;
  for (const auto& o : pack2d::g_outcomes) failed += !o.pass;
  std::printf("summary: %zu criteria, %d failed, %.1f s\n",
              pack2d::g_outcomes.size(), failed,
              std::chrono::duration<double>(Clock::now() - start).count());
  return failed == 0 ? 0 : 1;
}
