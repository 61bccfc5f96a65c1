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
#ifndef COMVE_DATA_H_
#define COMVE_DATA_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace comve {

enum class Task { kA, kB };
enum class Split { kTrain, kDev, kTest };

std::string_view TaskName(Task task);
Task ParseTask(std::string_view text);  // "A"/"B", case-insensitive
std::string_view SplitName(Split split);
Split ParseSplit(std::string_view text);

using InstanceId = std::uint64_t;

// Subtask A sample: two sentences, label is the index of the one that
// goes against common sense.
struct InstanceA {
  InstanceId id = 0;
  std::string sent0;
  std::string sent1;
  std::optional<int> label;

  bool operator==(const InstanceA&) const = default;
};

// Subtask B sample: a nonsensical statement and three candidate reasons,
// label is the index of the correct reason.
struct InstanceB {
  InstanceId id = 0;
  std::string false_statement;
  std::array<std::string, 3> options;
  std::optional<int> label;

  bool operator==(const InstanceB&) const = default;
};

// An immutable, validated collection of instances of one task. Instances keep
// file row order; ids are unique; either every instance is labeled or none.
class Dataset {
 public:
  Dataset(Split split, std::vector<InstanceA> instances);
  Dataset(Split split, std::vector<InstanceB> instances);

  Task task() const { return task_; }
  Split split() const { return split_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool labeled() const { return labeled_; }

  // Throw Error(kValidation) when called on the other task.
  const std::vector<InstanceA>& task_a() const;
  const std::vector<InstanceB>& task_b() const;

  std::vector<InstanceId> ids() const;
  // Gold labels in instance order. Throws if the dataset is unlabeled.
  std::vector<int> labels() const;
  // Position of an id in instance order, or nullopt.
  std::optional<std::size_t> IndexOf(InstanceId id) const;

  bool operator==(const Dataset& other) const;

 private:
  void Index();

  Task task_;
  Split split_;
  std::variant<std::vector<InstanceA>, std::vector<InstanceB>> instances_;
  std::map<InstanceId, std::size_t> index_;
  bool labeled_ = false;
};

// Descriptive metadata for an ensemble member. The size fields follow the
// usual transformer notation: layers L, hidden size H, embedding size E,
// attention heads A.
struct ModelInfo {
  std::string name;
  std::string family;
  std::optional<int> layers_L;
  std::optional<int> hidden_H;
  std::optional<int> embedding_E;
  std::optional<int> heads_A;
  std::optional<double> dev_score;

  // Throws Error(kValidation) for an empty name or dev_score outside [0,1].
  void Validate() const;
};

// Task A files: data `id,sent0,sent1`, answers `id,label` with label in {0,1}.
// Task B files: data `id,FalseSent,OptionA,OptionB,OptionC`, answers
// `id,label` with label in {A,B,C} (any case). Answer files may omit the
// header row. When an answers file is given every data row must receive
// exactly one label and every answer must name an existing row.
Dataset LoadTaskA(const std::string& data_file,
                  const std::optional<std::string>& answers_file = std::nullopt,
                  std::optional<Split> split = std::nullopt);
Dataset LoadTaskB(const std::string& data_file,
                  const std::optional<std::string>& answers_file = std::nullopt,
                  std::optional<Split> split = std::nullopt);
Dataset LoadDataset(Task task, const std::string& data_file,
                    const std::optional<std::string>& answers_file = std::nullopt,
                    std::optional<Split> split = std::nullopt);

// In-memory variants used by the file loaders; `origin` prefixes messages.
Dataset ParseTaskA(std::string_view data_csv,
                   std::optional<std::string_view> answers_csv,
                   std::optional<Split> split = std::nullopt,
                   std::string_view origin = "<memory>");
Dataset ParseTaskB(std::string_view data_csv,
                   std::optional<std::string_view> answers_csv,
                   std::optional<Split> split = std::nullopt,
                   std::string_view origin = "<memory>");

// Writers emit the same schemas the loaders accept.
void WriteDataCsv(const Dataset& dataset, std::ostream& out);
void WriteAnswersCsv(const Dataset& dataset, std::ostream& out);

// Count of instances per gold label. Throws Error(kValidation) when a
// non-empty dataset carries no labels.
std::map<int, std::size_t> LabelBalance(const Dataset& dataset);

// Deterministic seeded subset of `count` instances, kept in original order.
Dataset Sample(const Dataset& dataset, std::size_t count, std::uint64_t seed);

}  // namespace comve

#endif  // COMVE_DATA_H_
