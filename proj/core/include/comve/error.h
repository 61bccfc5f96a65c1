// Copyright 2026 The ComVE Harness Authors
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

#ifndef COMVE_ERROR_H_
#define COMVE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace comve {

// Coarse classification of failures. The CLI maps these onto exit codes.
enum class ErrorKind {
  kParse,         // malformed input text (CSV, JSON, config)
  kValidation,    // well-formed input violating a domain invariant
  kJoin,          // answer file does not line up with its data file
  kCoverage,      // prediction set does not cover a dataset exactly
  kInapplicable,  // method precondition not met by this instance
  kIo,            // file could not be opened, read or written
  kInternal,      // broken invariant inside the library
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace comve

#endif  // COMVE_ERROR_H_
