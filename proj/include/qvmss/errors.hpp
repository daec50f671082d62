// Copyright 2026 The qvmss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qvmss {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Register size outside the supported qubit range.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Qubit index out of range, or a malformed gate.
class IndexError : public Error {
 public:
  using Error::Error;
};

// State vector fails a precondition (e.g. not normalized).
class StateError : public Error {
 public:
  using Error::Error;
};

// Image dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Scheme parameters out of range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Simulated circuit disagreed with the classical XOR oracle.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed PBM input. `offset()` is the byte position where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), detail_(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  // Message without the offset suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

}  // namespace qvmss
