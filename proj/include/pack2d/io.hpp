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

// Text formats for instances and packings. Numbers are written as "p/q" or
// integers and read back exactly; decimals are accepted on input.
//
//   items N            bins B
//   ID W H             bin I
//   ...                ID X Y
//                      ...
//
// Blank lines and text after '#' are ignored.

#ifndef PACK2D_IO_HPP_
#define PACK2D_IO_HPP_

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pack2d/errors.hpp"
#include "pack2d/geometry.hpp"
#include "pack2d/scalar.hpp"

namespace pack2d {

namespace internal {

// Non-empty lines split into tokens, each with its 1-based line number.
struct Line {
  int number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> Tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    const size_t hash = text.find('#');
    if (hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline Scalar ScalarAt(const Line& line, size_t k) {
  try {
    return ParseScalar(line.tokens[k]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, e.what());
  }
}

inline long CountAt(const Line& line, size_t k) {
  const std::string& tok = line.tokens[k];
  if (!AllDigits(tok) || tok.size() > 9) {
    throw ParseError(line.number, "expected a count, got '" + tok + "'");
  }
  return std::stol(tok);
}

inline int IdAt(const Line& line, size_t k) {
  const std::string& tok = line.tokens[k];
  const bool negative = !tok.empty() && tok[0] == '-';
  const std::string digits = negative ? tok.substr(1) : tok;
  if (!AllDigits(digits) || digits.size() > 9) {
    throw ParseError(line.number, "expected an integer id, got '" + tok + "'");
  }
  return std::stoi(tok);
}

inline void ExpectTokens(const Line& line, size_t n, const std::string& what) {
  if (line.tokens.size() != n) {
    throw ParseError(line.number, "expected " + what);
  }
}

}  // namespace internal

// ---------------------------------------------------------------------------
// Instances.

inline void WriteInstance(std::ostream& out, const Instance& items) {
  out << "items " << items.size() << '\n';
  for (const Item& it : items) {
    out << it.id << ' ' << ToString(it.w) << ' ' << ToString(it.h) << '\n';
  }
}

inline std::string FormatInstance(const Instance& items) {
  std::ostringstream out;
  WriteInstance(out, items);
  return out.str();
}

// Throws ParseError on malformed text, duplicate ids, or sides outside
// (0, 1].
inline Instance ReadInstance(std::istream& in) {
  const std::vector<internal::Line> lines = internal::Tokenize(in);
  if (lines.empty()) throw ParseError(0, "empty instance file");
  const internal::Line& head = lines[0];
  if (head.tokens.size() != 2 || head.tokens[0] != "items") {
    throw ParseError(head.number, "expected 'items N'");
  }
  const long n = internal::CountAt(head, 1);
  if (static_cast<long>(lines.size()) - 1 != n) {
    throw ParseError(head.number, "header announces " + std::to_string(n) +
                                      " items, file has " +
                                      std::to_string(lines.size() - 1));
  }
  Instance items;
  std::map<int, int> seen;
  for (size_t k = 1; k < lines.size(); ++k) {
    const internal::Line& line = lines[k];
    internal::ExpectTokens(line, 3, "'ID W H'");
    const Item it{internal::IdAt(line, 0), internal::ScalarAt(line, 1),
                  internal::ScalarAt(line, 2)};
    if (sgn(it.w) <= 0 || it.w > 1 || sgn(it.h) <= 0 || it.h > 1) {
      throw ParseError(line.number, "item sides must lie in (0, 1]");
    }
    if (!seen.emplace(it.id, line.number).second) {
      throw ParseError(line.number, "duplicate item id " +
                                        std::to_string(it.id) +
                                        " (first on line " +
                                        std::to_string(seen[it.id]) + ")");
    }
    items.push_back(it);
  }
  return items;
}

inline Instance ParseInstance(const std::string& text) {
  std::istringstream in(text);
  return ReadInstance(in);
}

// ---------------------------------------------------------------------------
// Packings. Sizes come from the instance; bins are unit squares.

inline void WritePacking(std::ostream& out, const Packing& packing) {
  out << "bins " << packing.bins.size() << '\n';
  for (size_t b = 0; b < packing.bins.size(); ++b) {
    out << "bin " << b + 1 << '\n';
    for (const Placement& p : packing.bins[b].placements) {
      out << p.item.id << ' ' << ToString(p.x) << ' ' << ToString(p.y)
          << '\n';
    }
  }
}

inline std::string FormatPacking(const Packing& packing) {
  std::ostringstream out;
  WritePacking(out, packing);
  return out.str();
}

// Resolves ids against `items`. Throws ParseError on malformed text or
// unknown ids; overlaps and coverage are left to the validator.
inline Packing ReadPacking(std::istream& in, const Instance& items) {
  std::map<int, Item> by_id;
  for (const Item& it : items) by_id.emplace(it.id, it);
  const std::vector<internal::Line> lines = internal::Tokenize(in);
  if (lines.empty()) throw ParseError(0, "empty packing file");
  const internal::Line& head = lines[0];
  if (head.tokens.size() != 2 || head.tokens[0] != "bins") {
    throw ParseError(head.number, "expected 'bins B'");
  }
  const long bins = internal::CountAt(head, 1);
  Packing packing;
  for (size_t k = 1; k < lines.size(); ++k) {
    const internal::Line& line = lines[k];
    if (line.tokens[0] == "bin") {
      internal::ExpectTokens(line, 2, "'bin I'");
      const long index = internal::CountAt(line, 1);
      if (index != static_cast<long>(packing.bins.size()) + 1) {
        throw ParseError(line.number,
                         "bins must be numbered 1, 2, ... in order");
      }
      packing.bins.emplace_back();
      continue;
    }
    internal::ExpectTokens(line, 3, "'ID X Y'");
    if (packing.bins.empty()) {
      throw ParseError(line.number, "placement before the first 'bin' line");
    }
    const int id = internal::IdAt(line, 0);
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw ParseError(line.number,
                       "item " + std::to_string(id) + " is not in the instance");
    }
    packing.bins.back().Place(it->second, internal::ScalarAt(line, 1),
                              internal::ScalarAt(line, 2));
  }
  if (static_cast<long>(packing.bins.size()) != bins) {
    throw ParseError(head.number, "header announces " + std::to_string(bins) +
                                      " bins, file has " +
                                      std::to_string(packing.bins.size()));
  }
  return packing;
}

inline Packing ParsePacking(const std::string& text, const Instance& items) {
  std::istringstream in(text);
  return ReadPacking(in, items);
}

// File helpers; an unreadable file is a ParseError without a line.
inline Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return ReadInstance(in);
}

inline Packing LoadPacking(const std::string& path, const Instance& items) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return ReadPacking(in, items);
}

inline void SaveText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace pack2d

#endif  // PACK2D_IO_HPP_
