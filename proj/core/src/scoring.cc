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
#include "comve/scoring.h"

#include <algorithm>
#include <cmath>

#include "comve/error.h"

namespace comve {

void SoftPrediction::Validate(double tolerance) const {
  const std::string where = "prediction for id " + std::to_string(instance_id);
  const std::size_t arity = task == Task::kA ? 1 : 3;
  if (probs.size() != arity) {
    Fail(ErrorKind::kValidation, where + ": task " +
                                     std::string(TaskName(task)) + " needs " +
                                     std::to_string(arity) +
                                     " probabilities, got " +
                                     std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      Fail(ErrorKind::kValidation,
           where + ": probability " + std::to_string(p) + " outside [0,1]");
    }
    sum += p;
  }
  if (task == Task::kB && !(std::fabs(sum - 1.0) <= tolerance)) {
    Fail(ErrorKind::kValidation,
         where + ": probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

std::vector<double> Softmax(std::span<const double> scores) {
  if (scores.empty()) Fail(ErrorKind::kValidation, "softmax of an empty vector");
  for (double x : scores) {
    if (!std::isfinite(x)) {
      Fail(ErrorKind::kValidation, "softmax input is not finite");
    }
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out;
  out.reserve(scores.size());
  double sum = 0.0;
  for (double x : scores) {
    out.push_back(std::exp(x - top));
    sum += out.back();
  }
  for (double& x : out) x /= sum;
  return out;
}

double PairProbability(double score0, double score1) {
  if (!std::isfinite(score0) || !std::isfinite(score1)) {
    Fail(ErrorKind::kValidation, "softmax input is not finite");
  }
  // The larger score's probability is 1 - s with s = 1 / (1 + e^|d|) its
  // complement. The smaller one gets 1 - (1 - s), which is exact, so the two
  // orders are exact complements.
  const double d = score0 - score1;
  if (d >= 0.0) return 1.0 - 1.0 / (1.0 + std::exp(d));
  const double larger = 1.0 - 1.0 / (1.0 + std::exp(-d));
  return 1.0 - larger;
}

SoftPrediction ScorePairLm(const NGramModel& model, const InstanceA& instance,
                           std::string model_name) {
  const double ll0 = SentenceLogProb(model, Tokenize(instance.sent0));
  const double ll1 = SentenceLogProb(model, Tokenize(instance.sent1));
  return SoftPrediction{instance.id, Task::kA, {PairProbability(ll0, ll1)},
                        std::move(model_name)};
}

double MaskedTokenScore(const NGramModel& model, const TokenSeq& sentence,
                        std::size_t position) {
  if (position >= sentence.size()) {
    Fail(ErrorKind::kValidation, "masked position " + std::to_string(position) +
                                     " beyond sentence of length " +
                                     std::to_string(sentence.size()));
  }
  const std::vector<std::string> padded = PadSentence(sentence, model.order());
  const std::span<const std::string> view(padded);
  const std::size_t width = static_cast<std::size_t>(model.order() - 1);
  const std::size_t first = width + position;
  const std::size_t last = std::min(first + width, padded.size() - 1);
  double sum = 0.0;
  for (std::size_t j = first; j <= last; ++j) {
    sum += model.LogProbability(view.subspan(j - width, width), padded[j]);
  }
  return sum / static_cast<double>(last - first + 1);
}

SoftPrediction MaskedTokenCompare(const NGramModel& model,
                                  const InstanceA& instance,
                                  const SampleType& type,
                                  std::string model_name) {
  const Substitution* sub = type.substitution();
  if (type.kind != SampleKind::kTypeA || sub == nullptr) {
    Fail(ErrorKind::kInapplicable,
         "masked-token comparison needs a TypeA pair; instance " +
             std::to_string(instance.id) + " is " +
             std::string(SampleKindName(type.kind)));
  }
  const TokenSeq a = Tokenize(instance.sent0);
  const TokenSeq b = Tokenize(instance.sent1);
  if (a.size() != b.size() || sub->position >= a.size() ||
      a.tokens[sub->position] != sub->token_a ||
      b.tokens[sub->position] != sub->token_b) {
    Fail(ErrorKind::kInapplicable, "TypeA evidence does not match instance " +
                                       std::to_string(instance.id));
  }
  const double c0 = MaskedTokenScore(model, a, sub->position);
  const double c1 = MaskedTokenScore(model, b, sub->position);
  return SoftPrediction{instance.id, Task::kA, {PairProbability(c0, c1)},
                        std::move(model_name)};
}

TokenSeq ConcatSegments(const TokenSeq& first, const TokenSeq& second) {
  TokenSeq out = first;
  out.tokens.emplace_back(kSegmentSeparator);
  out.tokens.insert(out.tokens.end(), second.tokens.begin(),
                    second.tokens.end());
  return out;
}

SoftPrediction ScoreOptionsConcat(const NGramModel& model,
                                  const InstanceB& instance,
                                  std::string model_name) {
  const TokenSeq statement = Tokenize(instance.false_statement);
  std::vector<double> scores;
  scores.reserve(instance.options.size());
  for (const std::string& option : instance.options) {
    scores.push_back(
        SentenceLogProb(model, ConcatSegments(statement, Tokenize(option))));
  }
  return SoftPrediction{instance.id, Task::kB, Softmax(scores),
                        std::move(model_name)};
}

ScoringSummary ScoreDataset(const NGramModel& model, const Dataset& dataset,
                            ScoringMethod method,
                            const std::string& model_name) {
  ScoringSummary summary;
  summary.predictions.reserve(dataset.size());
  if (dataset.task() == Task::kB) {
    for (const InstanceB& instance : dataset.task_b()) {
      try {
        summary.predictions.push_back(
            ScoreOptionsConcat(model, instance, model_name));
      } catch (const Error& e) {
        Fail(e.kind(),
             "instance " + std::to_string(instance.id) + ": " + e.what());
      }
    }
    return summary;
  }
  for (const InstanceA& instance : dataset.task_a()) {
    try {
      if (method == ScoringMethod::kMaskedToken) {
        const SampleType type = ClassifyInstance(instance);
        if (type.kind == SampleKind::kTypeA) {
          summary.predictions.push_back(
              MaskedTokenCompare(model, instance, type, model_name));
          continue;
        }
        ++summary.fallbacks;
      }
      summary.predictions.push_back(ScorePairLm(model, instance, model_name));
    } catch (const Error& e) {
      Fail(e.kind(), "instance " + std::to_string(instance.id) + ": " + e.what());
    }
  }
  return summary;
}

}  // namespace comve
