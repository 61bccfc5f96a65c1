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
#include "comve/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace comve {
namespace {

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

nlohmann::ordered_json ModelInfoJson(const ModelInfo& info) {
  nlohmann::ordered_json j;
  j["name"] = info.name;
  if (!info.family.empty()) j["family"] = info.family;
  if (info.layers_L) j["L"] = *info.layers_L;
  if (info.hidden_H) j["H"] = *info.hidden_H;
  if (info.embedding_E) j["E"] = *info.embedding_E;
  if (info.heads_A) j["A"] = *info.heads_A;
  if (info.dev_score) j["dev_score"] = *info.dev_score;
  return j;
}

std::string SizeNotation(const ModelInfo& info) {
  std::string s;
  auto add = [&](const char* key, const std::optional<int>& v) {
    if (!v) return;
    if (!s.empty()) s += ' ';
    s += key;
    s += '=';
    s += std::to_string(*v);
  };
  add("L", info.layers_L);
  add("H", info.hidden_H);
  add("E", info.embedding_E);
  add("A", info.heads_A);
  return s;
}

}  // namespace

std::string FormatPercent(double fraction) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", fraction * 100.0);
  return buffer;
}

RenderedReport RenderReport(const EvalReport& report,
                            const std::optional<ReplacementTable>& table) {
  const bool with_table = table && !table->empty();
  std::ostringstream text;
  text << "Task " << TaskName(report.task);
  if (!report.model.empty()) text << ", model " << report.model;
  text << ", " << report.n_instances << " instances\n";
  text << "  " << Pad("Accuracy", 14) << FormatPercent(report.overall_accuracy)
       << "\n";
  if (report.task == Task::kA) {
    text << "  " << Pad("Ambiguous", 14) << report.n_ambiguous << "\n";
  }
  if (report.agreement_fraction) {
    text << "  " << Pad("Agreement", 14)
         << FormatPercent(*report.agreement_fraction) << "  ("
         << report.disagreeing.size() << " disagreeing)\n";
  }

  if (!report.per_type.empty()) {
    text << "\n  " << Pad("Type", 8) << Pad("Count", 8) << "Accuracy\n";
    for (const auto& [kind, stat] : report.per_type) {
      text << "  " << Pad(std::string(SampleKindName(kind)), 8)
           << Pad(std::to_string(stat.count), 8)
           << FormatPercent(stat.accuracy()) << "\n";
    }
  }

  if (!report.members.empty()) {
    std::size_t width = 8;
    for (const MemberSummary& m : report.members) {
      width = std::max(width, m.name.size() + 2);
    }
    text << "\n  " << Pad("System", width) << Pad("Accuracy", 10) << "Weight\n";
    for (const MemberSummary& m : report.members) {
      text << "  " << Pad(m.name, width) << Pad(FormatPercent(m.accuracy), 10);
      if (m.weight) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.4f", *m.weight);
        text << buffer;
      } else {
        text << "-";
      }
      if (m.info) {
        const std::string size = SizeNotation(*m.info);
        if (!size.empty()) text << "  " << size;
      }
      text << "\n";
    }
  }

  if (with_table) {
    std::size_t width = 8;
    for (const ReplacementRow& row : table->rows) {
      width = std::max(width, row.member.size() + 2);
    }
    text << "\nAmbiguity replacement (" << table->n_ambiguous
         << " ambiguous, ensemble " << FormatPercent(table->ensemble_accuracy)
         << ")\n";
    text << "  " << Pad("System", width) << Pad("Accuracy", 10)
         << "On ambiguous\n";
    for (const ReplacementRow& row : table->rows) {
      text << "  " << Pad(row.member, width)
           << Pad(FormatPercent(row.accuracy), 10)
           << (row.accuracy_on_ambiguous
                   ? FormatPercent(*row.accuracy_on_ambiguous)
                   : std::string("-"))
           << "\n";
    }
  }

  nlohmann::ordered_json doc;
  doc["task"] = TaskName(report.task);
  doc["model"] = report.model;
  doc["n_instances"] = report.n_instances;
  doc["overall_accuracy"] = report.overall_accuracy;
  if (report.task == Task::kA) {
    doc["n_ambiguous"] = report.n_ambiguous;
    nlohmann::ordered_json per_type = nlohmann::ordered_json::object();
    for (const auto& [kind, stat] : report.per_type) {
      per_type[std::string(SampleKindName(kind))] = {
          {"count", stat.count},
          {"correct", stat.correct},
          {"accuracy", stat.accuracy()}};
    }
    doc["per_type_accuracy"] = std::move(per_type);
  }
  if (report.agreement_fraction) {
    doc["agreement_fraction"] = *report.agreement_fraction;
    doc["disagreeing_ids"] = report.disagreeing;
  }
  if (!report.members.empty()) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const MemberSummary& m : report.members) {
      nlohmann::ordered_json j;
      j["name"] = m.name;
      j["accuracy"] = m.accuracy;
      if (m.weight) j["weight"] = *m.weight;
      if (m.info) j["info"] = ModelInfoJson(*m.info);
      members.push_back(std::move(j));
    }
    doc["members"] = std::move(members);
  }
  if (with_table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReplacementRow& row : table->rows) {
      nlohmann::ordered_json j;
      j["member"] = row.member;
      j["accuracy"] = row.accuracy;
      if (row.accuracy_on_ambiguous) {
        j["accuracy_on_ambiguous"] = *row.accuracy_on_ambiguous;
      }
      rows.push_back(std::move(j));
    }
    doc["replacement"] = {{"ensemble_accuracy", table->ensemble_accuracy},
                          {"n_ambiguous", table->n_ambiguous},
                          {"rows", std::move(rows)}};
  }
  return RenderedReport{text.str(), doc.dump(2) + "\n"};
}

}  // namespace comve
