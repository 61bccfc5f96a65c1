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
#include "comve/data.h"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "comve/csv.h"
#include "comve/error.h"
#include "comve/io.h"
#include "text_util.h"

namespace comve {
namespace {

using internal::Trim;

std::string Where(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line) + ": ";
}

std::vector<csv::Row> ParseCsv(std::string_view text, std::string_view origin) {
  try {
    return csv::Parse(text);
  } catch (const Error& e) {
    Fail(e.kind(), std::string(origin) + ": " + e.what());
  }
}

void ExpectHeader(const std::vector<csv::Row>& rows,
                  const std::vector<std::string_view>& expected,
                  std::string_view origin) {
  auto expected_text = [&] {
    std::string s;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) s += ',';
      s += expected[i];
    }
    return s;
  };
  if (rows.empty()) {
    Fail(ErrorKind::kParse, std::string(origin) +
                                ": empty file, expected header '" +
                                expected_text() + "'");
  }
  const csv::Row& header = rows.front();
  bool ok = header.fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = Trim(header.fields[i]) == expected[i];
  }
  if (!ok) {
    Fail(ErrorKind::kParse, Where(origin, header.line) + "expected header '" +
                                expected_text() + "'");
  }
}

InstanceId ParseId(const csv::Row& row, std::string_view origin) {
  auto id = internal::ParseUint64(row.fields.front());
  if (!id) {
    Fail(ErrorKind::kParse, Where(origin, row.line) + "id '" +
                                row.fields.front() +
                                "' is not a non-negative integer");
  }
  return *id;
}

std::string RequireText(const csv::Row& row, std::size_t column,
                        std::string_view name, std::string_view origin) {
  std::string_view text = Trim(row.fields[column]);
  if (text.empty()) {
    Fail(ErrorKind::kValidation,
         Where(origin, row.line) + "field '" + std::string(name) + "' is empty");
  }
  return std::string(text);
}

// Parses an answers file into (id -> label) in file order. `decode` maps the
// raw label text to an index or returns -1.
template <typename Decode>
std::vector<std::pair<InstanceId, int>> ParseAnswers(std::string_view text,
                                                     std::string_view origin,
                                                     Decode decode,
                                                     std::string_view allowed) {
  std::vector<csv::Row> rows = ParseCsv(text, origin);
  std::vector<std::pair<InstanceId, int>> answers;
  std::set<InstanceId> seen;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (r == 0 && !row.fields.empty() && Trim(row.fields[0]) == "id") continue;
    if (row.fields.size() != 2) {
      Fail(ErrorKind::kParse, Where(origin, row.line) + "expected 2 fields, got " +
                                  std::to_string(row.fields.size()));
    }
    InstanceId id = ParseId(row, origin);
    int label = decode(Trim(row.fields[1]));
    if (label < 0) {
      Fail(ErrorKind::kValidation, Where(origin, row.line) + "label '" +
                                       row.fields[1] + "' not in " +
                                       std::string(allowed));
    }
    if (!seen.insert(id).second) {
      Fail(ErrorKind::kValidation, Where(origin, row.line) + "duplicate answer for id " +
                                       std::to_string(id));
    }
    answers.emplace_back(id, label);
  }
  return answers;
}

template <typename Instance>
void JoinAnswers(std::vector<Instance>& instances,
                 const std::vector<std::pair<InstanceId, int>>& answers,
                 std::string_view origin) {
  std::map<InstanceId, std::size_t> index;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    index.emplace(instances[i].id, i);
  }
  for (const auto& [id, label] : answers) {
    auto it = index.find(id);
    if (it == index.end()) {
      Fail(ErrorKind::kJoin, std::string(origin) + ": answer for id " +
                                 std::to_string(id) +
                                 " has no matching data row");
    }
    instances[it->second].label = label;
  }
  for (const Instance& instance : instances) {
    if (!instance.label) {
      Fail(ErrorKind::kJoin, std::string(origin) + ": no answer for data id " +
                                 std::to_string(instance.id));
    }
  }
}

Split DefaultSplit(std::optional<Split> split, bool has_answers) {
  if (split) return *split;
  return has_answers ? Split::kDev : Split::kTest;
}

int DecodeLetter(std::string_view text) {
  if (text.size() != 1) return -1;
  switch (text[0]) {
    case 'A': case 'a': return 0;
    case 'B': case 'b': return 1;
    case 'C': case 'c': return 2;
  }
  return -1;
}

template <typename Instance>
void CheckInstances(const std::vector<Instance>& instances, std::size_t arity,
                    bool& labeled) {
  std::set<InstanceId> ids;
  std::size_t with_label = 0;
  for (const Instance& instance : instances) {
    if (!ids.insert(instance.id).second) {
      Fail(ErrorKind::kValidation,
           "duplicate instance id " + std::to_string(instance.id));
    }
    if (instance.label) {
      ++with_label;
      if (*instance.label < 0 || *instance.label >= static_cast<int>(arity)) {
        Fail(ErrorKind::kValidation, "instance " + std::to_string(instance.id) +
                                         ": label " +
                                         std::to_string(*instance.label) +
                                         " out of range");
      }
    }
  }
  if (with_label != 0 && with_label != instances.size()) {
    Fail(ErrorKind::kValidation,
         "dataset mixes labeled and unlabeled instances");
  }
  labeled = with_label != 0;
}

void CheckText(const std::string& text, InstanceId id) {
  if (Trim(text).empty()) {
    Fail(ErrorKind::kValidation,
         "instance " + std::to_string(id) + ": empty sentence");
  }
}

}  // namespace

std::string_view TaskName(Task task) { return task == Task::kA ? "A" : "B"; }

Task ParseTask(std::string_view text) {
  text = Trim(text);
  if (text == "A" || text == "a") return Task::kA;
  if (text == "B" || text == "b") return Task::kB;
  Fail(ErrorKind::kValidation, "unknown task '" + std::string(text) +
                                   "' (expected A or B)");
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

Split ParseSplit(std::string_view text) {
  text = Trim(text);
  if (text == "train") return Split::kTrain;
  if (text == "dev") return Split::kDev;
  if (text == "test") return Split::kTest;
  Fail(ErrorKind::kValidation, "unknown split '" + std::string(text) +
                                   "' (expected train, dev or test)");
}

Dataset::Dataset(Split split, std::vector<InstanceA> instances)
    : task_(Task::kA), split_(split), instances_(std::move(instances)) {
  const auto& list = std::get<std::vector<InstanceA>>(instances_);
  for (const InstanceA& instance : list) {
    CheckText(instance.sent0, instance.id);
    CheckText(instance.sent1, instance.id);
  }
  CheckInstances(list, 2, labeled_);
  Index();
}

Dataset::Dataset(Split split, std::vector<InstanceB> instances)
    : task_(Task::kB), split_(split), instances_(std::move(instances)) {
  const auto& list = std::get<std::vector<InstanceB>>(instances_);
  for (const InstanceB& instance : list) {
    CheckText(instance.false_statement, instance.id);
    for (const std::string& option : instance.options) {
      CheckText(option, instance.id);
    }
  }
  CheckInstances(list, 3, labeled_);
  Index();
}

void Dataset::Index() {
  std::vector<InstanceId> all = ids();
  for (std::size_t i = 0; i < all.size(); ++i) index_.emplace(all[i], i);
}

std::size_t Dataset::size() const {
  return std::visit([](const auto& list) { return list.size(); }, instances_);
}

const std::vector<InstanceA>& Dataset::task_a() const {
  if (task_ != Task::kA) {
    Fail(ErrorKind::kValidation, "expected a task A dataset, got task B");
  }
  return std::get<std::vector<InstanceA>>(instances_);
}

const std::vector<InstanceB>& Dataset::task_b() const {
  if (task_ != Task::kB) {
    Fail(ErrorKind::kValidation, "expected a task B dataset, got task A");
  }
  return std::get<std::vector<InstanceB>>(instances_);
}

std::vector<InstanceId> Dataset::ids() const {
  return std::visit(
      [](const auto& list) {
        std::vector<InstanceId> out;
        out.reserve(list.size());
        for (const auto& instance : list) out.push_back(instance.id);
        return out;
      },
      instances_);
}

std::vector<int> Dataset::labels() const {
  if (!labeled_ && !empty()) {
    Fail(ErrorKind::kValidation, "dataset carries no labels");
  }
  return std::visit(
      [](const auto& list) {
        std::vector<int> out;
        out.reserve(list.size());
        for (const auto& instance : list) out.push_back(*instance.label);
        return out;
      },
      instances_);
}

std::optional<std::size_t> Dataset::IndexOf(InstanceId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Dataset::operator==(const Dataset& other) const {
  return task_ == other.task_ && split_ == other.split_ &&
         instances_ == other.instances_;
}

void ModelInfo::Validate() const {
  if (Trim(name).empty()) Fail(ErrorKind::kValidation, "model name is empty");
  if (dev_score && !(*dev_score >= 0.0 && *dev_score <= 1.0)) {
    Fail(ErrorKind::kValidation, "model '" + name + "': dev_score " +
                                     std::to_string(*dev_score) +
                                     " outside [0,1]");
  }
}

Dataset ParseTaskA(std::string_view data_csv,
                   std::optional<std::string_view> answers_csv,
                   std::optional<Split> split, std::string_view origin) {
  std::vector<csv::Row> rows = ParseCsv(data_csv, origin);
  ExpectHeader(rows, {"id", "sent0", "sent1"}, origin);
  std::vector<InstanceA> instances;
  instances.reserve(rows.size() - 1);
  std::set<InstanceId> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.fields.size() != 3) {
      Fail(ErrorKind::kParse, Where(origin, row.line) + "expected 3 fields, got " +
                                  std::to_string(row.fields.size()));
    }
    InstanceA instance;
    instance.id = ParseId(row, origin);
    if (!seen.insert(instance.id).second) {
      Fail(ErrorKind::kValidation, Where(origin, row.line) + "duplicate id " +
                                       std::to_string(instance.id));
    }
    instance.sent0 = RequireText(row, 1, "sent0", origin);
    instance.sent1 = RequireText(row, 2, "sent1", origin);
    instances.push_back(std::move(instance));
  }
  if (answers_csv) {
    std::string answers_origin = std::string(origin) + " answers";
    auto answers = ParseAnswers(
        *answers_csv, answers_origin,
        [](std::string_view t) { return t == "0" ? 0 : t == "1" ? 1 : -1; },
        "{0,1}");
    JoinAnswers(instances, answers, answers_origin);
  }
  return Dataset(DefaultSplit(split, answers_csv.has_value()),
                 std::move(instances));
}

Dataset ParseTaskB(std::string_view data_csv,
                   std::optional<std::string_view> answers_csv,
                   std::optional<Split> split, std::string_view origin) {
  std::vector<csv::Row> rows = ParseCsv(data_csv, origin);
  ExpectHeader(rows, {"id", "FalseSent", "OptionA", "OptionB", "OptionC"},
               origin);
  std::vector<InstanceB> instances;
  instances.reserve(rows.size() - 1);
  std::set<InstanceId> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.fields.size() != 5) {
      const long options = static_cast<long>(row.fields.size()) - 2;
      Fail(ErrorKind::kValidation,
           Where(origin, row.line) + "expected 3 options, got " +
               std::to_string(std::max(0L, options)));
    }
    InstanceB instance;
    instance.id = ParseId(row, origin);
    if (!seen.insert(instance.id).second) {
      Fail(ErrorKind::kValidation, Where(origin, row.line) + "duplicate id " +
                                       std::to_string(instance.id));
    }
    instance.false_statement = RequireText(row, 1, "FalseSent", origin);
    instance.options[0] = RequireText(row, 2, "OptionA", origin);
    instance.options[1] = RequireText(row, 3, "OptionB", origin);
    instance.options[2] = RequireText(row, 4, "OptionC", origin);
    instances.push_back(std::move(instance));
  }
  if (answers_csv) {
    std::string answers_origin = std::string(origin) + " answers";
    auto answers =
        ParseAnswers(*answers_csv, answers_origin, DecodeLetter, "{A,B,C}");
    JoinAnswers(instances, answers, answers_origin);
  }
  return Dataset(DefaultSplit(split, answers_csv.has_value()),
                 std::move(instances));
}

namespace {

template <typename ParseFn>
Dataset LoadWith(ParseFn parse, const std::string& data_file,
                 const std::optional<std::string>& answers_file,
                 std::optional<Split> split) {
  std::string data = ReadTextFile(data_file);
  std::optional<std::string> answers;
  if (answers_file) answers = ReadTextFile(*answers_file);
  std::optional<std::string_view> answers_view;
  if (answers) answers_view = *answers;
  try {
    return parse(data, answers_view, split, data_file);
  } catch (const Error& e) {
    // Answer-file messages are tagged "<data> answers"; name the real file.
    std::string message = e.what();
    const std::string tag = data_file + " answers";
    if (answers_file && message.starts_with(tag)) {
      message = *answers_file + message.substr(tag.size());
    }
    Fail(e.kind(), message);
  }
}

}  // namespace

Dataset LoadTaskA(const std::string& data_file,
                  const std::optional<std::string>& answers_file,
                  std::optional<Split> split) {
  return LoadWith(ParseTaskA, data_file, answers_file, split);
}

Dataset LoadTaskB(const std::string& data_file,
                  const std::optional<std::string>& answers_file,
                  std::optional<Split> split) {
  return LoadWith(ParseTaskB, data_file, answers_file, split);
}

Dataset LoadDataset(Task task, const std::string& data_file,
                    const std::optional<std::string>& answers_file,
                    std::optional<Split> split) {
  return task == Task::kA ? LoadTaskA(data_file, answers_file, split)
                          : LoadTaskB(data_file, answers_file, split);
}

void WriteDataCsv(const Dataset& dataset, std::ostream& out) {
  if (dataset.task() == Task::kA) {
    csv::WriteRow(out, {"id", "sent0", "sent1"});
    for (const InstanceA& instance : dataset.task_a()) {
      csv::WriteRow(out, {std::to_string(instance.id), instance.sent0,
                          instance.sent1});
    }
  } else {
    csv::WriteRow(out, {"id", "FalseSent", "OptionA", "OptionB", "OptionC"});
    for (const InstanceB& instance : dataset.task_b()) {
      csv::WriteRow(out, {std::to_string(instance.id), instance.false_statement,
                          instance.options[0], instance.options[1],
                          instance.options[2]});
    }
  }
}

void WriteAnswersCsv(const Dataset& dataset, std::ostream& out) {
  std::vector<int> labels = dataset.labels();
  std::vector<InstanceId> ids = dataset.ids();
  csv::WriteRow(out, {"id", "label"});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::string label = dataset.task() == Task::kA
                            ? std::to_string(labels[i])
                            : std::string(1, static_cast<char>('A' + labels[i]));
    csv::WriteRow(out, {std::to_string(ids[i]), label});
  }
}

std::map<int, std::size_t> LabelBalance(const Dataset& dataset) {
  std::map<int, std::size_t> counts;
  for (int label : dataset.labels()) ++counts[label];
  return counts;
}

Dataset Sample(const Dataset& dataset, std::size_t count, std::uint64_t seed) {
  const std::size_t n = dataset.size();
  std::vector<std::size_t> keep(n);
  std::iota(keep.begin(), keep.end(), 0);
  if (count < n) {
    // mt19937_64's output sequence is fixed by the standard, so sorting by
    // raw draws gives the same subset on every platform.
    std::mt19937_64 engine(seed);
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
    for (std::size_t i = 0; i < n; ++i) keyed[i] = {engine(), i};
    std::sort(keyed.begin(), keyed.end());
    keep.clear();
    for (std::size_t i = 0; i < count; ++i) keep.push_back(keyed[i].second);
    std::sort(keep.begin(), keep.end());
  }
  if (dataset.task() == Task::kA) {
    std::vector<InstanceA> subset;
    for (std::size_t i : keep) subset.push_back(dataset.task_a()[i]);
    return Dataset(dataset.split(), std::move(subset));
  }
  std::vector<InstanceB> subset;
  for (std::size_t i : keep) subset.push_back(dataset.task_b()[i]);
  return Dataset(dataset.split(), std::move(subset));
}

}  // namespace comve
