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
#ifndef COMVE_TOOLS_RUN_CONFIG_H_
#define COMVE_TOOLS_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "comve/data.h"
#include "comve/ensemble.h"
#include "comve/error.h"

namespace comve::cli {

// A member prediction file, optionally with the dev score that weights it.
// Written PATH@SCORE on the command line and in config files.
struct MemberSpec {
  std::string path;
  std::optional<double> dev_score;

  bool operator==(const MemberSpec&) const = default;
};

MemberSpec ParseMemberSpec(std::string_view text);
Band ParseBand(std::string_view text);  // "lo,hi"

// Everything one subcommand invocation needs. Built from defaults, then the
// --config file, then command-line flags (flags win).
struct RunConfig {
  std::string command;
  Task task = Task::kA;
  std::optional<std::string> data;
  std::optional<std::string> answers;
  std::optional<Split> split;

  std::vector<MemberSpec> members;
  // Optional descriptive metadata keyed by member (model) name.
  std::map<std::string, ModelInfo> model_info;
  std::optional<std::string> predictions;

  std::optional<std::string> corpus;
  std::optional<std::string> model;  // n-gram model file
  int ngram_order = 3;
  double ngram_alpha = 0.1;
  std::string method = "lm";
  std::optional<std::string> model_name;

  double threshold = 0.5;
  Band band;

  std::optional<std::string> out;
  std::optional<std::string> out_answers;
  std::optional<std::string> labels_out;
  std::optional<std::string> json_out;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
};

// Flat key/value grammar, one setting per line:
//
//   # comment
//   key = value
//
// Blank lines and lines starting with '#' are ignored; keys and values are
// trimmed. `member` may repeat; any other key may appear once. Recognized
// keys: task, data, answers, split, member, predictions, corpus, model,
// order, alpha, method, name, threshold, band, out, out-answers, labels,
// json, sample, seed, and model.<name>.{family,L,H,E,A,dev_score}.
// Throws Error(kParse) naming the line of a bad entry.
void ApplyConfigText(std::string_view text, std::string_view origin,
                     RunConfig& config);

struct ConfigIssue {
  ErrorKind kind = ErrorKind::kValidation;
  std::string message;
};

// Checks every invariant of the configuration for its command before any
// work starts and returns all violations at once. Missing input files are
// reported with kind kIo.
std::vector<ConfigIssue> ValidateConfig(const RunConfig& config);

}  // namespace comve::cli

#endif  // COMVE_TOOLS_RUN_CONFIG_H_
