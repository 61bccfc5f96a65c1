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
#ifndef COMVE_ENSEMBLE_H_
#define COMVE_ENSEMBLE_H_

#include <span>
#include <string>
#include <vector>

#include "comve/data.h"
#include "comve/scoring.h"

namespace comve {

struct Band {
  double lower = 0.4;
  double upper = 0.6;

  bool Contains(double y) const { return lower <= y && y <= upper; }
  bool operator==(const Band&) const = default;
};

// Members, their voting weights, and the hardening rules.
struct EnsembleConfig {
  std::vector<ModelInfo> members;
  std::vector<double> weights;
  double threshold = 0.5;
  Band ambiguity_band;

  // Throws Error(kValidation): no members, weight/member count mismatch,
  // negative weights, weights not summing to 1 within 1e-9, inverted band or
  // threshold outside the band.
  void Validate() const;
};

// w_i = dev_score_i / sum_j dev_score_j. Throws Error(kValidation) if any
// member lacks a dev score or has a non-positive one.
std::vector<double> ComputeWeights(std::span<const ModelInfo> members);

// Members with weights derived from their dev scores; validated.
EnsembleConfig MakeEnsembleConfig(std::vector<ModelInfo> members,
                                  double threshold = 0.5, Band band = {});

// y = sum_i w_i p_i, elementwise for task B. The products are accumulated in
// a fixed value order so that permuting (member, weight, prediction) triples
// leaves y bit-identical, and y is clamped to [min_i p_i, max_i p_i] to keep
// the convex-combination bound exact under rounding.
std::vector<double> WeightedSum(std::span<const SoftPrediction> predictions,
                                const EnsembleConfig& config);

// 0 if y < threshold, else 1. Throws Error(kValidation) for y outside [0,1].
int Harden(double y, const EnsembleConfig& config);
// Closed interval test against the ambiguity band.
bool FlagAmbiguous(double y, const EnsembleConfig& config);
// Argmax, ties to the lowest index.
int HardenVector(std::span<const double> y);

// Hard label for a single member prediction (threshold or argmax).
int HardenPrediction(const SoftPrediction& prediction,
                     const EnsembleConfig& config);

struct EnsembleOutput {
  InstanceId instance_id = 0;
  Task task = Task::kA;
  std::vector<double> y;
  int hard_label = 0;
  bool ambiguous = false;  // task A only

  bool operator==(const EnsembleOutput&) const = default;
};

// One output per dataset instance, in dataset order. `member_predictions[i]`
// are the predictions of config.members[i] in any order; each must cover the
// dataset exactly (Error(kCoverage) otherwise).
std::vector<EnsembleOutput> RunEnsemble(
    const Dataset& dataset,
    const std::vector<std::vector<SoftPrediction>>& member_predictions,
    const EnsembleConfig& config);

// Member predictions re-ordered to dataset order. Throws Error(kCoverage).
std::vector<SoftPrediction> AlignToDataset(
    const Dataset& dataset, const std::vector<SoftPrediction>& predictions);

// Ensemble outputs expressed in the interchange schema.
std::vector<SoftPrediction> ToSoftPredictions(
    const std::vector<EnsembleOutput>& outputs,
    const std::string& model_name = "ensemble");

}  // namespace comve

#endif  // COMVE_ENSEMBLE_H_
