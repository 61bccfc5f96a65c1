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
#ifndef COMVE_TAXONOMY_H_
#define COMVE_TAXONOMY_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "comve/data.h"

namespace comve {

// Normalized word tokens of a sentence. Never contains an empty token.
struct TokenSeq {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  bool operator==(const TokenSeq&) const = default;
};

// Lowercases ASCII letters, splits on whitespace, strips leading and trailing
// ASCII punctuation from every chunk and drops chunks left empty. Bytes
// outside ASCII pass through untouched. Throws Error(kValidation) if no token
// survives.
TokenSeq Tokenize(std::string_view text);

enum class SampleKind {
  kTypeA,  // same length, exactly one differing position
  kTypeB,  // same tokens in a different order
  kTypeC,  // anything else
};

inline constexpr std::array<SampleKind, 3> kAllSampleKinds = {
    SampleKind::kTypeA, SampleKind::kTypeB, SampleKind::kTypeC};

std::string_view SampleKindName(SampleKind kind);  // "TypeA", ...
SampleKind ParseSampleKind(std::string_view text);

struct Substitution {
  std::size_t position = 0;
  std::string token_a;
  std::string token_b;

  bool operator==(const Substitution&) const = default;
};

// target[i] is the position in the second sequence holding the i-th token of
// the first. A bijection with at least one i where target[i] != i.
struct Permutation {
  std::vector<std::size_t> target;

  bool operator==(const Permutation&) const = default;
};

struct SampleType {
  SampleKind kind = SampleKind::kTypeC;
  std::variant<std::monostate, Substitution, Permutation> evidence;
  // Set when both sentences normalize to the same tokens.
  bool degenerate = false;

  const Substitution* substitution() const {
    return std::get_if<Substitution>(&evidence);
  }
  const Permutation* permutation() const {
    return std::get_if<Permutation>(&evidence);
  }
};

// Total and symmetric in kind. Requires both sequences non-empty.
SampleType ClassifyPair(const TokenSeq& a, const TokenSeq& b);

// Tokenizes both sentences of the instance, then ClassifyPair.
SampleType ClassifyInstance(const InstanceA& instance);

struct TypeCounts {
  std::size_t type_a = 0;
  std::size_t type_b = 0;
  std::size_t type_c = 0;
  std::size_t degenerate = 0;  // subset of type_c

  std::size_t total() const { return type_a + type_b + type_c; }
  std::size_t& operator[](SampleKind kind);
  std::size_t operator[](SampleKind kind) const;
  bool operator==(const TypeCounts&) const = default;
};

// Classification of every instance of a task A dataset, in instance order.
std::vector<SampleType> ClassifyDataset(const Dataset& dataset);

// Throws Error(kValidation) for a task B dataset.
TypeCounts TypeDistribution(const Dataset& dataset);
TypeCounts CountKinds(const std::vector<SampleType>& types);

std::vector<SampleKind> Kinds(const std::vector<SampleType>& types);

}  // namespace comve

#endif  // COMVE_TAXONOMY_H_
