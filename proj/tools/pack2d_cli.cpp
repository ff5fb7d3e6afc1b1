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

// pack2d command-line front end.
//
//   pack2d gen --mode guillotine --n N --ell L --seed S --out FILE
//   pack2d pack --in FILE [--k K] [--eps P/Q] --out FILE [--svg DIR]
//   pack2d validate --in FILE --packing FILE
//   pack2d oracle --in FILE --max-bins B
//   pack2d render --in FILE --packing FILE --out DIR
//
// Exit codes: 0 ok, 1 invalid packing, 2 parse error, 3 limits exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "pack2d/config.hpp"
#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/io.hpp"
#include "pack2d/oracle.hpp"
#include "pack2d/solver.hpp"
#include "pack2d/svg.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kParse = 2;
constexpr int kLimits = 3;

void WriteSvgs(const pack2d::Packing& packing, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto svgs = pack2d::RenderPackingSvg(packing);
  for (size_t b = 0; b < svgs.size(); ++b) {
    pack2d::SaveText(
        (std::filesystem::path(dir) / ("bin" + std::to_string(b + 1) + ".svg"))
            .string(),
        svgs[b]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional bin packing with exact rational geometry"};
  app.require_subcommand(1);

  std::string mode = "guillotine", in, out, packing_path, svg_dir, eps_text;
  int n = 1, ell = 1, k = 0, max_bins = 0;
  uint64_t seed = 0;
  int64_t den = 64;

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--mode", mode, "guillotine or shrink")
      ->check(CLI::IsMember({"guillotine", "shrink"}));
  gen->add_option("--n", n, "number of items")->required();
  gen->add_option("--ell", ell, "number of witness bins");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--den", den, "grid denominator");
  gen->add_option("--out", out, "instance file")->required();

  CLI::App* pack = app.add_subcommand("pack", "pack an instance");
  pack->add_option("--in", in, "instance file")->required();
  pack->add_option("--k", k, "constant-optimum bound (>= 2)");
  pack->add_option("--eps", eps_text, "two-bin accuracy, below 1/200");
  pack->add_option("--out", out, "packing file")->required();
  pack->add_option("--svg", svg_dir, "directory for one SVG per bin");

  CLI::App* validate = app.add_subcommand("validate", "check a packing");
  validate->add_option("--in", in, "instance file")->required();
  validate->add_option("--packing", packing_path, "packing file")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "exact minimum bin count");
  oracle->add_option("--in", in, "instance file")->required();
  oracle->add_option("--max-bins", max_bins, "largest count to try")
      ->required();

  CLI::App* render = app.add_subcommand("render", "draw a packing as SVG");
  render->add_option("--in", in, "instance file")->required();
  render->add_option("--packing", packing_path, "packing file")->required();
  render->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (gen->parsed()) {
      pack2d::GeneratorSpec spec;
      spec.seed = seed;
      spec.n = n;
      spec.ell = ell;
      spec.den = den;
      spec.mode = mode == "shrink" ? pack2d::GenMode::kShrink
                                   : pack2d::GenMode::kGuillotine;
      const pack2d::Generated g = pack2d::GenInstance(spec);
      pack2d::SaveText(out, pack2d::FormatInstance(g.items));
      return kOk;
    }

    pack2d::SolveConfig config = pack2d::ApplyEnvironment({});
    const pack2d::Instance items = pack2d::LoadInstance(in);

    if (pack->parsed()) {
      if (k != 0) config.k = k;
      if (!eps_text.empty()) {
        try {
          config.eps_opt1 = pack2d::ParseScalar(eps_text);
        } catch (const std::invalid_argument& e) {
          std::cerr << "--eps: " << e.what() << '\n';
          return kParse;
        }
      }
      config.Validate();
      const pack2d::AutoResult r = pack2d::PackAuto(items, config);
      pack2d::SaveText(out, pack2d::FormatPacking(r.packing));
      if (!svg_dir.empty()) WriteSvgs(r.packing, svg_dir);
      std::cout << "bins " << r.packing.NumBins() << '\n'
                << "branch " << r.branch << '\n'
                << "guaranteed " << (r.guaranteed ? "true" : "false") << '\n';
      return kOk;
    }

    if (validate->parsed()) {
      const pack2d::Packing p = pack2d::LoadPacking(packing_path, items);
      const pack2d::ValidationReport report = pack2d::ValidatePacking(p, items);
      if (!report.ok()) {
        std::cout << "invalid\n" << report.ToString();
        return kInvalid;
      }
      std::cout << "ok " << p.NumBins() << " bins\n";
      return kOk;
    }

    if (oracle->parsed()) {
      const auto r = pack2d::ExactMinBins(items, max_bins, config.oracle_limit,
                                          config.Exact());
      if (!r) {
        std::cout << "opt > " << max_bins << '\n';
      } else {
        std::cout << "opt " << r->opt << '\n';
      }
      return kOk;
    }

    if (render->parsed()) {
      const pack2d::Packing p = pack2d::LoadPacking(packing_path, items);
      WriteSvgs(p, out);
      return kOk;
    }
  } catch (const pack2d::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const pack2d::InstanceTooLarge& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return kLimits;
  } catch (const pack2d::PreconditionViolated& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}
