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
#ifndef COMVE_ANALYSIS_H_
#define COMVE_ANALYSIS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comve/data.h"
#include "comve/ensemble.h"
#include "comve/scoring.h"
#include "comve/taxonomy.h"

namespace comve {

struct IdLabel {
  InstanceId id = 0;
  int label = 0;

  bool operator==(const IdLabel&) const = default;
};
using HardLabels = std::vector<IdLabel>;

struct NamedLabels {
  std::string name;
  HardLabels labels;
};

HardLabels GoldLabels(const Dataset& dataset);
HardLabels HardLabelsOf(const std::vector<EnsembleOutput>& outputs);
HardLabels HardenAll(const std::vector<SoftPrediction>& predictions,
                     double threshold);

// matches / total over id-aligned lists. Throws Error(kValidation) when the
// lists are empty, differ in length or disagree on the id at any position.
double Accuracy(const HardLabels& predicted, const HardLabels& gold);

struct AgreementResult {
  double fraction = 1.0;
  std::vector<InstanceId> disagreeing;  // in the first member's order
};

// Fraction of ids on which every member gives the same label. Members may
// list ids in any order but must cover the same set (Error(kCoverage)).
AgreementResult Agreement(std::span<const HardLabels> members);

struct KindStat {
  std::size_t count = 0;
  std::size_t correct = 0;

  double accuracy() const {
    return count == 0 ? 0.0 : static_cast<double>(correct) / count;
  }
  bool operator==(const KindStat&) const = default;
};

// Kinds with no instances are absent from the map. `kinds` is aligned with
// the label lists; a length mismatch is Error(kValidation).
std::map<SampleKind, KindStat> PerTypeBreakdown(
    const HardLabels& predicted, const HardLabels& gold,
    std::span<const SampleKind> kinds);
std::map<SampleKind, double> PerTypeAccuracy(const HardLabels& predicted,
                                             const HardLabels& gold,
                                             std::span<const SampleKind> kinds);

struct ReplacementRow {
  std::string member;
  // Ensemble labels with every ambiguous id overwritten by this member's.
  double accuracy = 0.0;
  // This member's own accuracy restricted to the ambiguous ids.
  std::optional<double> accuracy_on_ambiguous;
};

struct ReplacementTable {
  double ensemble_accuracy = 0.0;
  std::size_t n_ambiguous = 0;
  std::vector<ReplacementRow> rows;

  bool empty() const { return rows.empty(); }
};

// One row per member, in the given order.
ReplacementTable AmbiguityReplacement(
    const std::vector<EnsembleOutput>& outputs,
    std::span<const NamedLabels> members, const HardLabels& gold);

struct MemberSummary {
  std::string name;
  double accuracy = 0.0;
  std::optional<double> weight;
  std::optional<ModelInfo> info;
};

struct EvalReport {
  Task task = Task::kA;
  std::string model;
  double overall_accuracy = 0.0;
  std::map<SampleKind, KindStat> per_type;  // task A only
  std::size_t n_instances = 0;
  std::size_t n_ambiguous = 0;              // task A only
  std::optional<double> agreement_fraction;  // when members are supplied
  std::vector<InstanceId> disagreeing;
  std::vector<MemberSummary> members;
};

// Accuracy, per-type breakdown (task A), ambiguity count (task A, using
// `band`) and, when `members` is non-empty, their agreement and individual
// accuracies. `predictions` must be aligned with the labeled dataset.
EvalReport Evaluate(const Dataset& dataset,
                    const std::vector<SoftPrediction>& predictions,
                    double threshold, const Band& band,
                    std::span<const NamedLabels> members = {});

}  // namespace comve

#endif  // COMVE_ANALYSIS_H_
