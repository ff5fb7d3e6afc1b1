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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pack2d/config.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/io.hpp"
#include "pack2d/oracle.hpp"
#include "pack2d/rng.hpp"
#include "pack2d/svg.hpp"
#include "test_support.hpp"

namespace pack2d {
namespace {

using testing::MakeItem;

int ParseErrorLine(const std::string& text) {
  try {
    ParseInstance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Instances.

TEST(InstanceFormat, RoundTripOnGeneratedInstances) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.n = 1 + static_cast<int>(seed % 12);
    spec.ell = 1 + static_cast<int>(seed % 3) % spec.n;
    spec.mode = seed % 2 ? GenMode::kShrink : GenMode::kGuillotine;
    spec.den = seed % 5 == 0 ? 1000 : 64;
    const Generated g = GenInstance(spec);
    const std::string text = FormatInstance(g.items);
    EXPECT_EQ(ParseInstance(text), g.items);
    EXPECT_EQ(FormatInstance(ParseInstance(text)), text);
    EXPECT_EQ(ParsePacking(FormatPacking(g.witness), g.items), g.witness);
  }
}

TEST(InstanceFormat, LargeNumeratorsSurvive) {
  const Instance items = {
      {7, Scalar("123456789012345678901/987654321098765432100"), Rational(1)},
      {-3, Rational(1, 3), Rational(2, 7)}};
  EXPECT_EQ(ParseInstance(FormatInstance(items)), items);
}

TEST(InstanceFormat, ExactText) {
  const Instance items = {MakeItem(1, 1, 2, 3, 4), MakeItem(2, 1, 1, 2, 6)};
  EXPECT_EQ(FormatInstance(items), "items 2\n1 1/2 3/4\n2 1 1/3\n");
}

TEST(InstanceFormat, DecimalsAreExact) {
  const Instance items =
      ParseInstance("items 2\n1 0.125 0.1\n2 .5 1.0  # comment\n\n");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].w, Rational(1, 8));
  EXPECT_EQ(items[0].h, Rational(1, 10));
  EXPECT_EQ(items[1].w, Rational(1, 2));
  EXPECT_EQ(items[1].h, Rational(1));
}

TEST(InstanceFormat, ErrorsNameTheLine) {
  EXPECT_EQ(ParseErrorLine("items 2\n1 1/2 1/2\n2 3/0 1/2\n"), 3);
  EXPECT_EQ(ParseErrorLine("items 1\n1 1/2\n"), 2);
  EXPECT_EQ(ParseErrorLine("items 1\n1 1/2 x\n"), 2);
  EXPECT_EQ(ParseErrorLine("items 1\n1 3/2 1/2\n"), 2);
  EXPECT_EQ(ParseErrorLine("items 1\n1 0 1/2\n"), 2);
  EXPECT_EQ(ParseErrorLine("items 2\n1 1/2 1/2\n1 1/2 1/2\n"), 3);
  EXPECT_EQ(ParseErrorLine("# header below\nitems 3\n1 1/2 1/2\n"), 2);
  EXPECT_EQ(ParseErrorLine("item 1\n1 1/2 1/2\n"), 1);
  EXPECT_EQ(ParseErrorLine("items -1\n"), 1);
  EXPECT_EQ(ParseErrorLine("items 1\nx 1/2 1/2\n"), 2);
  EXPECT_EQ(ParseErrorLine(""), 0);
  EXPECT_EQ(ParseErrorLine("items 0\n"), -1);
}

TEST(InstanceFormat, MissingFileIsAParseError) {
  EXPECT_THROW(LoadInstance("/nonexistent/pack2d/instance.txt"), ParseError);
}

// ---------------------------------------------------------------------------
// Packings.

TEST(PackingFormat, ExactTextAndRoundTrip) {
  const Instance items = {MakeItem(1, 1, 2, 1, 2), MakeItem(2, 1, 2, 1, 3)};
  Packing p;
  p.bins.resize(2);
  p.bins[0].Place(items[0], 0, 0);
  p.bins[1].Place(items[1], Rational(1, 2), Rational(2, 3));
  const std::string text = FormatPacking(p);
  EXPECT_EQ(text, "bins 2\nbin 1\n1 0 0\nbin 2\n2 1/2 2/3\n");
  EXPECT_EQ(ParsePacking(text, items), p);
}

TEST(PackingFormat, EmptyBinsRoundTrip) {
  Packing p;
  p.bins.resize(3);
  EXPECT_EQ(ParsePacking(FormatPacking(p), {}), p);
  EXPECT_EQ(ParsePacking("bins 0\n", {}).NumBins(), 0u);
}

TEST(PackingFormat, Errors) {
  const Instance items = {MakeItem(1, 1, 2, 1, 2)};
  auto line = [&](const std::string& text) {
    try {
      ParsePacking(text, items);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line("bins 1\nbin 1\n9 0 0\n"), 3);       // unknown id
  EXPECT_EQ(line("bins 1\n1 0 0\n"), 2);              // no bin line
  EXPECT_EQ(line("bins 2\nbin 2\n"), 2);              // numbering
  EXPECT_EQ(line("bins 2\nbin 1\n1 0 0\n"), 1);       // count mismatch
  EXPECT_EQ(line("bins 1\nbin 1\n1 0 1/0\n"), 3);     // bad number
  EXPECT_EQ(line("bin 1\n"), 1);                      // bad header
  // Duplicates parse; the validator reports them.
  const Packing dup = ParsePacking("bins 1\nbin 1\n1 0 0\n1 0 0\n", items);
  EXPECT_FALSE(ValidatePacking(dup, items).ok());
}

// ---------------------------------------------------------------------------
// SVG.

TEST(Svg, OneDocumentPerBinWithLabels) {
  const Instance items = {MakeItem(1, 1, 2, 1, 4), MakeItem(22, 1, 4, 1, 2)};
  Packing p;
  p.bins.resize(2);
  p.bins[0].Place(items[0], 0, 0);
  p.bins[0].Place(items[1], Rational(1, 2), 0);
  const std::vector<std::string> svgs = RenderPackingSvg(p);
  ASSERT_EQ(svgs.size(), 2u);
  EXPECT_NE(svgs[0].find("viewBox=\"0 0 512 512\""), std::string::npos);
  EXPECT_NE(svgs[0].find("version=\"1.1\""), std::string::npos);
  // Origin at the bottom left: a quarter-high item at y = 0 starts at 384.
  EXPECT_NE(svgs[0].find("<rect x=\"0.000\" y=\"384.000\" width=\"256.000\" "
                         "height=\"128.000\""),
            std::string::npos);
  EXPECT_NE(svgs[0].find(">22</text>"), std::string::npos);
  EXPECT_EQ(svgs[1].find("<text"), std::string::npos);
  EXPECT_EQ(RenderBinSvg(p.bins[0]), svgs[0]);
}

// ---------------------------------------------------------------------------
// Configuration.

EnvLookup FakeEnv(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const char* name) -> const char* {
    auto it = vars.find(name);
    return it == vars.end() ? nullptr : it->second.c_str();
  };
}

TEST(Config, Defaults) {
  const SolveConfig c;
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.eps_opt1, Rational(1, 256));
  EXPECT_EQ(c.exact_limit, 10);
  EXPECT_EQ(c.enumeration_limit, 12);
  EXPECT_EQ(c.oracle_limit, 8);
  EXPECT_EQ(c.EpsConst(), Rational(1, 1082));
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(ApplyEnvironment(c, FakeEnv({})).k, 3);
}

TEST(Config, EnvironmentOverrides) {
  const SolveConfig c = ApplyEnvironment(
      {}, FakeEnv({{"K", "4"},
                   {"EPS_OPT1", "1/300"},
                   {"EXACT_LIMIT", "7"},
                   {"ENUMERATION_LIMIT", "9"},
                   {"ORACLE_LIMIT", "6"}}));
  EXPECT_EQ(c.k, 4);
  EXPECT_EQ(c.eps_opt1, Rational(1, 300));
  EXPECT_EQ(c.exact_limit, 7);
  EXPECT_EQ(c.enumeration_limit, 9);
  EXPECT_EQ(c.oracle_limit, 6);
  EXPECT_EQ(c.EpsConst(), Rational(1, 2562));
  EXPECT_EQ(c.Const().enumeration_limit, 9);
  EXPECT_EQ(c.Const().exact.exact_limit, 7);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(ApplyEnvironment({}, FakeEnv({{"K", "1"}})),
               PreconditionViolated);
  EXPECT_THROW(ApplyEnvironment({}, FakeEnv({{"K", "three"}})),
               PreconditionViolated);
  EXPECT_THROW(ApplyEnvironment({}, FakeEnv({{"EPS_OPT1", "1/200"}})),
               PreconditionViolated);
  EXPECT_THROW(ApplyEnvironment({}, FakeEnv({{"EPS_OPT1", "1/0"}})),
               PreconditionViolated);
  EXPECT_THROW(ApplyEnvironment({}, FakeEnv({{"ORACLE_LIMIT", "-1"}})),
               PreconditionViolated);
}

}  // namespace
}  // namespace pack2d
