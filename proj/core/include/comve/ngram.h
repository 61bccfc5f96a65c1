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
#ifndef COMVE_NGRAM_H_
#define COMVE_NGRAM_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "comve/taxonomy.h"

namespace comve {

// Additively smoothed n-gram language model over normalized word tokens.
//
// Each training sentence is padded with order-1 begin markers and a single
// end marker. The vocabulary is every observed token plus the end and
// unknown markers; begin markers are context only and are never predicted.
// For a context c (the order-1 preceding tokens) and token w,
//
//   P(w | c) = (count(c, w) + alpha) / (count(c) + alpha * |V|)
//
// so every conditional distribution sums to one and an unseen context is
// uniform. Tokens outside the vocabulary are scored as the unknown marker.
// Immutable after training; safe to share across threads.
class NGramModel {
 public:
  static constexpr std::string_view kBegin = "<s>";
  static constexpr std::string_view kEnd = "</s>";
  static constexpr std::string_view kUnknown = "<unk>";

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  // Sorted.
  std::vector<std::string> vocabulary() const;
  bool InVocabulary(std::string_view token) const;

  // `context` must hold exactly order-1 tokens; OOV tokens are mapped to the
  // unknown marker before lookup.
  double Probability(std::span<const std::string> context,
                     std::string_view token) const;
  double LogProbability(std::span<const std::string> context,
                        std::string_view token) const;

  std::size_t Count(std::span<const std::string> context,
                    std::string_view token) const;
  std::size_t ContextTotal(std::span<const std::string> context) const;

  // Deterministic JSON serialization (sorted keys and contexts).
  std::string ToJson() const;
  static NGramModel FromJson(std::string_view json);

  void Save(const std::string& path) const;
  static NGramModel Load(const std::string& path);

 private:
  friend NGramModel TrainNGram(const std::vector<TokenSeq>& corpus, int order,
                               double alpha);

  struct ContextCounts {
    std::size_t total = 0;
    std::unordered_map<std::string, std::size_t> next;
  };

  NGramModel(int order, double alpha) : order_(order), alpha_(alpha) {}
  std::string Key(std::span<const std::string> context) const;
  std::string_view Canonical(std::string_view token) const;
  void CheckInvariants() const;

  int order_;
  double alpha_;
  std::unordered_set<std::string> vocabulary_;
  std::unordered_map<std::string, ContextCounts> counts_;
};

// Throws Error(kValidation) for an empty corpus, order < 1 or alpha <= 0.
NGramModel TrainNGram(const std::vector<TokenSeq>& corpus, int order,
                      double alpha);

// Sentence padded the way the model sees it: order-1 begin markers, the
// tokens, one end marker.
std::vector<std::string> PadSentence(const TokenSeq& sentence, int order);

// Natural-log probability of each of the size()+1 prediction events of the
// sentence (every token, then the end marker).
std::vector<double> EventLogProbs(const NGramModel& model,
                                  const TokenSeq& sentence);

// Mean of EventLogProbs. Throws Error(kValidation) for an empty sentence.
double SentenceLogProb(const NGramModel& model, const TokenSeq& sentence);

// One sentence per line; lines that normalize to nothing are skipped.
std::vector<TokenSeq> ReadCorpus(const std::string& path);
std::vector<TokenSeq> ParseCorpus(std::string_view text);

}  // namespace comve

#endif  // COMVE_NGRAM_H_
