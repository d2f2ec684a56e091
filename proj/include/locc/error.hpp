// Copyright 2026 The locc-marker Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace locc {

/// Error classes. Each maps onto one status code of the C API and one exit
/// code of the command-line tool.
enum class ErrorKind {
  invalid_input,       // malformed document, bad argument, violated precondition
  dimension_mismatch,  // operands live in different spaces
  cap_exceeded,        // branch enumeration larger than the configured cap
  undecidable,         // outside the fragment decided by exact methods
  no_protocol,         // no marking protocol can be constructed
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message,
                    ErrorKind kind = ErrorKind::invalid_input) {
  if (!condition) throw Error(kind, message);
}

}  // namespace locc
