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

// Error types raised by the packing algorithms and the file readers.

#ifndef PACK2D_ERRORS_HPP_
#define PACK2D_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pack2d {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A guessed branch or parameter did not lead to a valid packing.
class GuessFailed : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// The area condition of the strip packer does not hold for the input.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

// The instance exceeds a configured enumeration or search limit.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

// A constructive routine met a state its case analysis does not cover.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pack2d

#endif  // PACK2D_ERRORS_HPP_
