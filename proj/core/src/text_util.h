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
#ifndef COMVE_SRC_TEXT_UTIL_H_
#define COMVE_SRC_TEXT_UTIL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace comve::internal {

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsAsciiSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsAsciiSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::uint64_t> ParseUint64(std::string_view s);
std::optional<long long> ParseInt(std::string_view s);
std::optional<double> ParseDouble(std::string_view s);

}  // namespace comve::internal

#endif  // COMVE_SRC_TEXT_UTIL_H_
