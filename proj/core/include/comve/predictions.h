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
#ifndef COMVE_PREDICTIONS_H_
#define COMVE_PREDICTIONS_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "comve/data.h"
#include "comve/scoring.h"

namespace comve {

// Prediction interchange is JSON Lines, one object per instance:
//   {"id":0,"task":"A","probs":[0.97],"model":"albert-xxl"}
// with one probability for task A and three for task B.

inline constexpr double kInterchangeSumTolerance = 1e-6;

// Parses and validates a prediction file against a dataset. The result is in
// dataset order. Throws Error(kParse) for malformed lines, kValidation for
// bad probabilities or a task mismatch, kCoverage for missing, extra or
// duplicated ids.
std::vector<SoftPrediction> LoadExternalPredictions(const std::string& path,
                                                    const Dataset& dataset);
std::vector<SoftPrediction> ParsePredictions(std::string_view jsonl,
                                             const Dataset& dataset,
                                             std::string_view origin);

std::string PredictionToJson(const SoftPrediction& prediction);
void WritePredictions(const std::vector<SoftPrediction>& predictions,
                      std::ostream& out);

}  // namespace comve

#endif  // COMVE_PREDICTIONS_H_
