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
#include "comve/analysis.h"

#include <unordered_map>

#include "comve/error.h"

namespace comve {
namespace {

void CheckAligned(const HardLabels& predicted, const HardLabels& gold) {
  if (predicted.size() != gold.size()) {
    Fail(ErrorKind::kValidation,
         std::to_string(predicted.size()) + " predictions for " +
             std::to_string(gold.size()) + " gold labels");
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i].id != gold[i].id) {
      Fail(ErrorKind::kValidation,
           "prediction id " + std::to_string(predicted[i].id) +
               " misaligned with gold id " + std::to_string(gold[i].id) +
               " at position " + std::to_string(i));
    }
  }
}

// The labels of `labels` re-ordered to the id order of `reference`.
HardLabels Reorder(const HardLabels& labels, const HardLabels& reference,
                   const std::string& who) {
  std::unordered_map<InstanceId, int> by_id;
  by_id.reserve(labels.size());
  for (const IdLabel& l : labels) {
    if (!by_id.emplace(l.id, l.label).second) {
      Fail(ErrorKind::kCoverage,
           who + ": duplicate id " + std::to_string(l.id));
    }
  }
  if (by_id.size() != reference.size()) {
    Fail(ErrorKind::kCoverage, who + ": covers " + std::to_string(by_id.size()) +
                                   " ids, expected " +
                                   std::to_string(reference.size()));
  }
  HardLabels out;
  out.reserve(reference.size());
  for (const IdLabel& r : reference) {
    auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      Fail(ErrorKind::kCoverage, who + ": no label for id " + std::to_string(r.id));
    }
    out.push_back({r.id, it->second});
  }
  return out;
}

}  // namespace

HardLabels GoldLabels(const Dataset& dataset) {
  const std::vector<InstanceId> ids = dataset.ids();
  const std::vector<int> labels = dataset.labels();
  HardLabels out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out.push_back({ids[i], labels[i]});
  return out;
}

HardLabels HardLabelsOf(const std::vector<EnsembleOutput>& outputs) {
  HardLabels out;
  out.reserve(outputs.size());
  for (const EnsembleOutput& o : outputs) out.push_back({o.instance_id, o.hard_label});
  return out;
}

HardLabels HardenAll(const std::vector<SoftPrediction>& predictions,
                     double threshold) {
  EnsembleConfig rules;
  rules.threshold = threshold;
  HardLabels out;
  out.reserve(predictions.size());
  for (const SoftPrediction& p : predictions) {
    out.push_back({p.instance_id, HardenPrediction(p, rules)});
  }
  return out;
}

double Accuracy(const HardLabels& predicted, const HardLabels& gold) {
  if (gold.empty()) Fail(ErrorKind::kValidation, "accuracy over zero instances");
  CheckAligned(predicted, gold);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i].label == gold[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

AgreementResult Agreement(std::span<const HardLabels> members) {
  if (members.empty()) Fail(ErrorKind::kValidation, "agreement of zero members");
  const HardLabels& first = members.front();
  if (first.empty()) Fail(ErrorKind::kValidation, "agreement over zero instances");
  std::vector<HardLabels> aligned;
  aligned.reserve(members.size());
  for (std::size_t m = 0; m < members.size(); ++m) {
    aligned.push_back(Reorder(members[m], first, "member " + std::to_string(m)));
  }
  AgreementResult result;
  std::size_t agreeing = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    bool same = true;
    for (const HardLabels& labels : aligned) {
      same = same && labels[i].label == aligned.front()[i].label;
    }
    if (same) {
      ++agreeing;
    } else {
      result.disagreeing.push_back(first[i].id);
    }
  }
  result.fraction = static_cast<double>(agreeing) / static_cast<double>(first.size());
  return result;
}

std::map<SampleKind, KindStat> PerTypeBreakdown(
    const HardLabels& predicted, const HardLabels& gold,
    std::span<const SampleKind> kinds) {
  CheckAligned(predicted, gold);
  if (kinds.size() != gold.size()) {
    Fail(ErrorKind::kValidation,
         "type assignments missing: " + std::to_string(kinds.size()) + " for " +
             std::to_string(gold.size()) + " instances");
  }
  std::map<SampleKind, KindStat> stats;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    KindStat& stat = stats[kinds[i]];
    ++stat.count;
    if (predicted[i].label == gold[i].label) ++stat.correct;
  }
  return stats;
}

std::map<SampleKind, double> PerTypeAccuracy(const HardLabels& predicted,
                                             const HardLabels& gold,
                                             std::span<const SampleKind> kinds) {
  std::map<SampleKind, double> out;
  for (const auto& [kind, stat] : PerTypeBreakdown(predicted, gold, kinds)) {
    out.emplace(kind, stat.accuracy());
  }
  return out;
}

ReplacementTable AmbiguityReplacement(
    const std::vector<EnsembleOutput>& outputs,
    std::span<const NamedLabels> members, const HardLabels& gold) {
  const HardLabels ensemble = HardLabelsOf(outputs);
  if (ensemble.size() != gold.size()) {
    Fail(ErrorKind::kCoverage, "ensemble covers " + std::to_string(ensemble.size()) +
                                   " ids, gold has " + std::to_string(gold.size()));
  }
  ReplacementTable table;
  table.ensemble_accuracy = Accuracy(ensemble, gold);
  for (const EnsembleOutput& o : outputs) {
    if (o.ambiguous) ++table.n_ambiguous;
  }
  for (const NamedLabels& member : members) {
    const HardLabels own = Reorder(member.labels, gold, "member '" + member.name + "'");
    HardLabels replaced = ensemble;
    std::size_t own_correct = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (!outputs[i].ambiguous) continue;
      replaced[i].label = own[i].label;
      if (own[i].label == gold[i].label) ++own_correct;
    }
    ReplacementRow row;
    row.member = member.name;
    row.accuracy = Accuracy(replaced, gold);
    if (table.n_ambiguous > 0) {
      row.accuracy_on_ambiguous = static_cast<double>(own_correct) /
                                  static_cast<double>(table.n_ambiguous);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

EvalReport Evaluate(const Dataset& dataset,
                    const std::vector<SoftPrediction>& predictions,
                    double threshold, const Band& band,
                    std::span<const NamedLabels> members) {
  const HardLabels gold = GoldLabels(dataset);
  const std::vector<SoftPrediction> aligned = AlignToDataset(dataset, predictions);
  const HardLabels predicted = HardenAll(aligned, threshold);

  EvalReport report;
  report.task = dataset.task();
  report.n_instances = dataset.size();
  if (!aligned.empty()) report.model = aligned.front().model;
  report.overall_accuracy = Accuracy(predicted, gold);
  if (dataset.task() == Task::kA) {
    const std::vector<SampleKind> kinds = Kinds(ClassifyDataset(dataset));
    report.per_type = PerTypeBreakdown(predicted, gold, kinds);
    for (const SoftPrediction& p : aligned) {
      if (band.Contains(p.probs[0])) ++report.n_ambiguous;
    }
  }
  if (!members.empty()) {
    std::vector<HardLabels> labels;
    for (const NamedLabels& member : members) {
      HardLabels own = Reorder(member.labels, gold, "member '" + member.name + "'");
      report.members.push_back({member.name, Accuracy(own, gold), {}, {}});
      labels.push_back(std::move(own));
    }
    AgreementResult agreement = Agreement(labels);
    report.agreement_fraction = agreement.fraction;
    report.disagreeing = std::move(agreement.disagreeing);
  }
  return report;
}

}  // namespace comve
