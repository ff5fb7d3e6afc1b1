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

// Static SVG drawings of bins, one file per bin, 512 x 512 user units with
// the origin at the bottom left.

#ifndef PACK2D_SVG_HPP_
#define PACK2D_SVG_HPP_

#include <cstdio>
#include <string>
#include <vector>

#include "pack2d/geometry.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

namespace internal {

inline std::string Coord(const Scalar& v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ToDouble(v * 512));
  return buf;
}

}  // namespace internal

inline std::string RenderBinSvg(const BinLayout& bin) {
  using internal::Coord;
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n"
      "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\" "
      "stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const Placement& p : bin.placements) {
    const Scalar top = 1 - p.y - p.item.h;
    out += "<rect x=\"" + Coord(p.x) + "\" y=\"" + Coord(top) +
           "\" width=\"" + Coord(p.item.w) + "\" height=\"" +
           Coord(p.item.h) +
           "\" fill=\"#9ecae1\" stroke=\"#08519c\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + Coord(p.x + p.item.w / 2) + "\" y=\"" +
           Coord(top + p.item.h / 2) +
           "\" font-size=\"10\" text-anchor=\"middle\" "
           "dominant-baseline=\"middle\">" +
           std::to_string(p.item.id) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

inline std::vector<std::string> RenderPackingSvg(const Packing& packing) {
  std::vector<std::string> out;
  for (const BinLayout& bin : packing.bins) out.push_back(RenderBinSvg(bin));
  return out;
}

}  // namespace pack2d

#endif  // PACK2D_SVG_HPP_
