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
#include "comve/taxonomy.h"

#include <algorithm>
#include <deque>
#include <map>

#include "comve/error.h"

namespace comve {
namespace {

bool IsAsciiPunct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
         (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

// Whitespace and other ASCII control characters separate tokens.
bool IsSeparator(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u <= 0x20 || u == 0x7F;
}

}  // namespace

TokenSeq Tokenize(std::string_view text) {
  TokenSeq seq;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSeparator(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSeparator(text[i])) ++i;
    std::string_view chunk = text.substr(start, i - start);
    while (!chunk.empty() && IsAsciiPunct(chunk.front())) chunk.remove_prefix(1);
    while (!chunk.empty() && IsAsciiPunct(chunk.back())) chunk.remove_suffix(1);
    if (chunk.empty()) continue;
    std::string token(chunk);
    for (char& c : token) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    seq.tokens.push_back(std::move(token));
  }
  if (seq.tokens.empty()) {
    Fail(ErrorKind::kValidation,
         "sentence '" + std::string(text) + "' has no tokens after normalization");
  }
  return seq;
}

std::string_view SampleKindName(SampleKind kind) {
  switch (kind) {
    case SampleKind::kTypeA: return "TypeA";
    case SampleKind::kTypeB: return "TypeB";
    case SampleKind::kTypeC: return "TypeC";
  }
  return "?";
}

SampleKind ParseSampleKind(std::string_view text) {
  for (SampleKind kind : kAllSampleKinds) {
    if (SampleKindName(kind) == text) return kind;
  }
  Fail(ErrorKind::kValidation, "unknown sample type '" + std::string(text) + "'");
}

SampleType ClassifyPair(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) {
    Fail(ErrorKind::kValidation, "cannot classify an empty token sequence");
  }
  SampleType result;
  if (a == b) {
    result.kind = SampleKind::kTypeC;
    result.degenerate = true;
    return result;
  }

  if (a.size() == b.size()) {
    std::size_t differing = 0;
    std::size_t position = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.tokens[i] != b.tokens[i]) {
        if (differing++ == 0) position = i;
      }
    }
    if (differing == 1) {
      result.kind = SampleKind::kTypeA;
      result.evidence =
          Substitution{position, a.tokens[position], b.tokens[position]};
      return result;
    }

    std::vector<std::string> sorted_a = a.tokens;
    std::vector<std::string> sorted_b = b.tokens;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a == sorted_b) {
      // Stable matching: the k-th occurrence of a token in a goes to its k-th
      // occurrence in b. Because a != b this cannot be the identity.
      std::map<std::string_view, std::deque<std::size_t>> slots;
      for (std::size_t j = 0; j < b.size(); ++j) slots[b.tokens[j]].push_back(j);
      Permutation witness;
      witness.target.reserve(a.size());
      for (const std::string& token : a.tokens) {
        auto& queue = slots[token];
        witness.target.push_back(queue.front());
        queue.pop_front();
      }
      result.kind = SampleKind::kTypeB;
      result.evidence = std::move(witness);
      return result;
    }
  }

  result.kind = SampleKind::kTypeC;
  return result;
}

SampleType ClassifyInstance(const InstanceA& instance) {
  return ClassifyPair(Tokenize(instance.sent0), Tokenize(instance.sent1));
}

std::size_t& TypeCounts::operator[](SampleKind kind) {
  switch (kind) {
    case SampleKind::kTypeA: return type_a;
    case SampleKind::kTypeB: return type_b;
    case SampleKind::kTypeC: return type_c;
  }
  Fail(ErrorKind::kInternal, "bad sample kind");
}

std::size_t TypeCounts::operator[](SampleKind kind) const {
  return const_cast<TypeCounts&>(*this)[kind];
}

std::vector<SampleType> ClassifyDataset(const Dataset& dataset) {
  std::vector<SampleType> types;
  types.reserve(dataset.size());
  for (const InstanceA& instance : dataset.task_a()) {
    try {
      types.push_back(ClassifyInstance(instance));
    } catch (const Error& e) {
      Fail(e.kind(), "instance " + std::to_string(instance.id) + ": " + e.what());
    }
  }
  return types;
}

TypeCounts CountKinds(const std::vector<SampleType>& types) {
  TypeCounts counts;
  for (const SampleType& type : types) {
    ++counts[type.kind];
    if (type.degenerate) ++counts.degenerate;
  }
  return counts;
}

TypeCounts TypeDistribution(const Dataset& dataset) {
  if (dataset.task() != Task::kA) {
    Fail(ErrorKind::kValidation,
         "type distribution is defined for task A datasets only");
  }
  return CountKinds(ClassifyDataset(dataset));
}

std::vector<SampleKind> Kinds(const std::vector<SampleType>& types) {
  std::vector<SampleKind> kinds;
  kinds.reserve(types.size());
  for (const SampleType& type : types) kinds.push_back(type.kind);
  return kinds;
}

}  // namespace comve
