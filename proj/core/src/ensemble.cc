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
#include "comve/ensemble.h"

#include <algorithm>
#include <cmath>

#include "comve/error.h"

namespace comve {

void EnsembleConfig::Validate() const {
  if (members.empty()) Fail(ErrorKind::kValidation, "ensemble has no members");
  if (weights.size() != members.size()) {
    Fail(ErrorKind::kValidation, std::to_string(weights.size()) +
                                     " weights for " +
                                     std::to_string(members.size()) + " members");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      Fail(ErrorKind::kValidation, "ensemble weights must be finite and >= 0");
    }
    sum += w;
  }
  if (!(std::fabs(sum - 1.0) <= 1e-9)) {
    Fail(ErrorKind::kValidation,
         "ensemble weights sum to " + std::to_string(sum) + ", not 1");
  }
  if (!(ambiguity_band.lower <= ambiguity_band.upper)) {
    Fail(ErrorKind::kValidation, "ambiguity band lower bound exceeds upper bound");
  }
  if (!(ambiguity_band.lower >= 0.0 && ambiguity_band.upper <= 1.0)) {
    Fail(ErrorKind::kValidation, "ambiguity band must lie within [0,1]");
  }
  if (!ambiguity_band.Contains(threshold)) {
    Fail(ErrorKind::kValidation, "threshold must lie inside the ambiguity band");
  }
}

std::vector<double> ComputeWeights(std::span<const ModelInfo> members) {
  if (members.empty()) Fail(ErrorKind::kValidation, "ensemble has no members");
  std::vector<double> scores;
  scores.reserve(members.size());
  for (const ModelInfo& member : members) {
    member.Validate();
    if (!member.dev_score) {
      Fail(ErrorKind::kValidation,
           "member '" + member.name + "' has no dev score");
    }
    if (!(*member.dev_score > 0.0)) {
      Fail(ErrorKind::kValidation,
           "member '" + member.name + "' has a non-positive dev score");
    }
    scores.push_back(*member.dev_score);
  }
  // Summed in sorted order so the total does not depend on member order.
  std::sort(scores.begin(), scores.end());
  double total = 0.0;
  for (double score : scores) total += score;
  std::vector<double> weights;
  weights.reserve(members.size());
  for (const ModelInfo& member : members) {
    weights.push_back(*member.dev_score / total);
  }
  return weights;
}

EnsembleConfig MakeEnsembleConfig(std::vector<ModelInfo> members,
                                  double threshold, Band band) {
  EnsembleConfig config;
  config.weights = ComputeWeights(members);
  config.members = std::move(members);
  config.threshold = threshold;
  config.ambiguity_band = band;
  config.Validate();
  return config;
}

std::vector<double> WeightedSum(std::span<const SoftPrediction> predictions,
                                const EnsembleConfig& config) {
  if (predictions.size() != config.members.size() ||
      predictions.size() != config.weights.size()) {
    Fail(ErrorKind::kValidation,
         std::to_string(predictions.size()) + " predictions for " +
             std::to_string(config.members.size()) + " ensemble members");
  }
  const SoftPrediction& head = predictions.front();
  for (const SoftPrediction& p : predictions) {
    if (p.instance_id != head.instance_id) {
      Fail(ErrorKind::kValidation,
           "weighted sum over mixed instance ids " +
               std::to_string(head.instance_id) + " and " +
               std::to_string(p.instance_id));
    }
    if (p.task != head.task || p.probs.size() != head.probs.size()) {
      Fail(ErrorKind::kValidation, "weighted sum over mixed tasks for id " +
                                       std::to_string(head.instance_id));
    }
  }

  const std::size_t width = head.probs.size();
  std::vector<double> y(width);
  std::vector<double> terms(predictions.size());
  for (std::size_t k = 0; k < width; ++k) {
    double lo = predictions[0].probs[k];
    double hi = lo;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const double p = predictions[i].probs[k];
      terms[i] = config.weights[i] * p;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    y[k] = std::clamp(sum, lo, hi);
  }
  return y;
}

int Harden(double y, const EnsembleConfig& config) {
  if (!(y >= 0.0 && y <= 1.0)) {
    Fail(ErrorKind::kValidation,
         "cannot harden " + std::to_string(y) + ": outside [0,1]");
  }
  return y < config.threshold ? 0 : 1;
}

bool FlagAmbiguous(double y, const EnsembleConfig& config) {
  return config.ambiguity_band.Contains(y);
}

int HardenVector(std::span<const double> y) {
  if (y.empty()) Fail(ErrorKind::kValidation, "argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] > y[best]) best = i;
  }
  return static_cast<int>(best);
}

int HardenPrediction(const SoftPrediction& prediction,
                     const EnsembleConfig& config) {
  if (prediction.task == Task::kA) {
    if (prediction.probs.size() != 1) {
      Fail(ErrorKind::kValidation, "task A prediction needs one probability");
    }
    return Harden(prediction.probs[0], config);
  }
  return HardenVector(prediction.probs);
}

std::vector<SoftPrediction> AlignToDataset(
    const Dataset& dataset, const std::vector<SoftPrediction>& predictions) {
  std::vector<const SoftPrediction*> slots(dataset.size(), nullptr);
  for (const SoftPrediction& p : predictions) {
    if (p.task != dataset.task()) {
      Fail(ErrorKind::kValidation, "prediction task does not match dataset");
    }
    auto index = dataset.IndexOf(p.instance_id);
    if (!index) {
      Fail(ErrorKind::kCoverage,
           "prediction for unknown id " + std::to_string(p.instance_id));
    }
    if (slots[*index] != nullptr) {
      Fail(ErrorKind::kCoverage,
           "duplicate prediction for id " + std::to_string(p.instance_id));
    }
    slots[*index] = &p;
  }
  std::vector<SoftPrediction> out;
  out.reserve(slots.size());
  const std::vector<InstanceId> ids = dataset.ids();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] == nullptr) {
      Fail(ErrorKind::kCoverage, "no prediction for id " + std::to_string(ids[i]));
    }
    out.push_back(*slots[i]);
  }
  return out;
}

std::vector<EnsembleOutput> RunEnsemble(
    const Dataset& dataset,
    const std::vector<std::vector<SoftPrediction>>& member_predictions,
    const EnsembleConfig& config) {
  config.Validate();
  if (member_predictions.size() != config.members.size()) {
    Fail(ErrorKind::kValidation,
         std::to_string(member_predictions.size()) + " prediction sets for " +
             std::to_string(config.members.size()) + " ensemble members");
  }
  std::vector<std::vector<SoftPrediction>> aligned;
  aligned.reserve(member_predictions.size());
  for (std::size_t m = 0; m < member_predictions.size(); ++m) {
    try {
      aligned.push_back(AlignToDataset(dataset, member_predictions[m]));
    } catch (const Error& e) {
      Fail(e.kind(), "member '" + config.members[m].name + "': " + e.what());
    }
  }

  std::vector<EnsembleOutput> outputs;
  outputs.reserve(dataset.size());
  std::vector<SoftPrediction> column(config.members.size());
  const std::vector<InstanceId> ids = dataset.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t m = 0; m < aligned.size(); ++m) column[m] = aligned[m][i];
    EnsembleOutput out;
    out.instance_id = ids[i];
    out.task = dataset.task();
    out.y = WeightedSum(column, config);
    if (out.task == Task::kA) {
      out.hard_label = Harden(out.y[0], config);
      out.ambiguous = FlagAmbiguous(out.y[0], config);
    } else {
      out.hard_label = HardenVector(out.y);
    }
    outputs.push_back(std::move(out));
  }
  return outputs;
}

std::vector<SoftPrediction> ToSoftPredictions(
    const std::vector<EnsembleOutput>& outputs, const std::string& model_name) {
  std::vector<SoftPrediction> out;
  out.reserve(outputs.size());
  for (const EnsembleOutput& o : outputs) {
    out.push_back(SoftPrediction{o.instance_id, o.task, o.y, model_name});
  }
  return out;
}

}  // namespace comve
