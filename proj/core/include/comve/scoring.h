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
#ifndef COMVE_SCORING_H_
#define COMVE_SCORING_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comve/data.h"
#include "comve/ngram.h"
#include "comve/taxonomy.h"

namespace comve {

// A model's probability output for one instance. Task A carries one value,
// the probability that sentence 1 is the invalid one. Task B carries a
// distribution over the three options.
struct SoftPrediction {
  InstanceId instance_id = 0;
  Task task = Task::kA;
  std::vector<double> probs;
  std::string model;

  // Arity, range and normalization (|sum - 1| <= tolerance) checks.
  // Throws Error(kValidation).
  void Validate(double tolerance = 1e-9) const;

  bool operator==(const SoftPrediction&) const = default;
};

// Max-subtracted softmax. Throws Error(kValidation) on empty or non-finite
// input.
std::vector<double> Softmax(std::span<const double> scores);

// softmax({score0, score1})[0], computed so that swapping the arguments
// yields exactly 1 - result.
double PairProbability(double score0, double score1);

// Compare the two sentences' length-normalized log-likelihoods.
SoftPrediction ScorePairLm(const NGramModel& model, const InstanceA& instance,
                           std::string model_name = "ngram-lm");

// Mean log-probability of the events that see `position`: the token itself
// given its preceding context, plus up to order-1 following events whose
// context window contains it.
double MaskedTokenScore(const NGramModel& model, const TokenSeq& sentence,
                        std::size_t position);

// Score only the differing token of a TypeA pair in its shared context.
// Throws Error(kInapplicable) unless `type` is TypeA evidence for this pair.
SoftPrediction MaskedTokenCompare(const NGramModel& model,
                                  const InstanceA& instance,
                                  const SampleType& type,
                                  std::string model_name = "ngram-masked");

// Separator token placed between statement and reason.
inline constexpr std::string_view kSegmentSeparator = "<sep>";

TokenSeq ConcatSegments(const TokenSeq& first, const TokenSeq& second);

// Softmax over the log-likelihoods of statement + separator + option_i.
SoftPrediction ScoreOptionsConcat(const NGramModel& model,
                                  const InstanceB& instance,
                                  std::string model_name = "ngram-lm");

enum class ScoringMethod { kLanguageModel, kMaskedToken };

struct ScoringSummary {
  std::vector<SoftPrediction> predictions;
  // Instances scored by the sentence LM because the masked method did not
  // apply to them (non-TypeA pairs).
  std::size_t fallbacks = 0;
};

// Scores every instance of a dataset in order. With kMaskedToken, task A
// pairs that are not TypeA fall back to ScorePairLm. Task B always uses
// ScoreOptionsConcat.
ScoringSummary ScoreDataset(const NGramModel& model, const Dataset& dataset,
                            ScoringMethod method,
                            const std::string& model_name);

}  // namespace comve

#endif  // COMVE_SCORING_H_
