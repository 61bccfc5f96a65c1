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
#include "run_config.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <set>

namespace comve::cli {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view s) {
  s = Trim(s);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

template <typename T>
T RequireNumber(std::string_view s, std::string_view what) {
  auto value = ParseNumber<T>(s);
  if (!value) {
    Fail(ErrorKind::kParse, "invalid " + std::string(what) + " '" +
                                std::string(s) + "'");
  }
  return *value;
}

bool IsFile(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

void Set(RunConfig& config, std::string_view key, std::string_view value) {
  auto text = std::string(value);
  if (key == "task") {
    config.task = ParseTask(value);
  } else if (key == "data") {
    config.data = text;
  } else if (key == "answers") {
    config.answers = text;
  } else if (key == "split") {
    config.split = ParseSplit(value);
  } else if (key == "member") {
    config.members.push_back(ParseMemberSpec(value));
  } else if (key == "predictions") {
    config.predictions = text;
  } else if (key == "corpus") {
    config.corpus = text;
  } else if (key == "model") {
    config.model = text;
  } else if (key == "order") {
    config.ngram_order = RequireNumber<int>(value, "order");
  } else if (key == "alpha") {
    config.ngram_alpha = RequireNumber<double>(value, "alpha");
  } else if (key == "method") {
    config.method = text;
  } else if (key == "name") {
    config.model_name = text;
  } else if (key == "threshold") {
    config.threshold = RequireNumber<double>(value, "threshold");
  } else if (key == "band") {
    config.band = ParseBand(value);
  } else if (key == "out") {
    config.out = text;
  } else if (key == "out-answers") {
    config.out_answers = text;
  } else if (key == "labels") {
    config.labels_out = text;
  } else if (key == "json") {
    config.json_out = text;
  } else if (key == "sample") {
    config.sample = RequireNumber<std::size_t>(value, "sample");
  } else if (key == "seed") {
    config.seed = RequireNumber<std::uint64_t>(value, "seed");
  } else if (key.starts_with("model.")) {
    std::string_view rest = key.substr(6);
    const std::size_t dot = rest.rfind('.');
    if (dot == std::string_view::npos || dot == 0) {
      Fail(ErrorKind::kParse, "expected model.<name>.<field>, got '" +
                                  std::string(key) + "'");
    }
    const std::string name(rest.substr(0, dot));
    const std::string_view field = rest.substr(dot + 1);
    ModelInfo& info = config.model_info[name];
    info.name = name;
    if (field == "family") {
      info.family = text;
    } else if (field == "L") {
      info.layers_L = RequireNumber<int>(value, "L");
    } else if (field == "H") {
      info.hidden_H = RequireNumber<int>(value, "H");
    } else if (field == "E") {
      info.embedding_E = RequireNumber<int>(value, "E");
    } else if (field == "A") {
      info.heads_A = RequireNumber<int>(value, "A");
    } else if (field == "dev_score") {
      info.dev_score = RequireNumber<double>(value, "dev_score");
    } else {
      Fail(ErrorKind::kParse, "unknown model field '" + std::string(field) + "'");
    }
  } else {
    Fail(ErrorKind::kParse, "unknown key '" + std::string(key) + "'");
  }
}

const std::set<std::string, std::less<>> kCommands = {
    "ingest", "classify-types", "train-lm", "score",
    "ensemble", "eval", "analyze-ambiguity"};

}  // namespace

MemberSpec ParseMemberSpec(std::string_view text) {
  text = Trim(text);
  MemberSpec spec;
  const std::size_t at = text.rfind('@');
  if (at == std::string_view::npos) {
    spec.path = std::string(text);
  } else {
    spec.path = std::string(Trim(text.substr(0, at)));
    spec.dev_score = RequireNumber<double>(text.substr(at + 1), "dev score");
  }
  if (spec.path.empty()) {
    Fail(ErrorKind::kParse, "member '" + std::string(text) + "' has no path");
  }
  return spec;
}

Band ParseBand(std::string_view text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) {
    Fail(ErrorKind::kParse, "band must be written lo,hi; got '" +
                                std::string(text) + "'");
  }
  return Band{RequireNumber<double>(text.substr(0, comma), "band bound"),
              RequireNumber<double>(text.substr(comma + 1), "band bound")};
}

void ApplyConfigText(std::string_view text, std::string_view origin,
                     RunConfig& config) {
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const std::string where =
        std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      Fail(ErrorKind::kParse, where + "expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) Fail(ErrorKind::kParse, where + "empty key");
    if (key != "member" && !seen.insert(key).second) {
      Fail(ErrorKind::kParse, where + "duplicate key '" + key + "'");
    }
    try {
      Set(config, key, value);
    } catch (const Error& e) {
      Fail(ErrorKind::kParse, where + e.what());
    }
  }
}

std::vector<ConfigIssue> ValidateConfig(const RunConfig& config) {
  std::vector<ConfigIssue> issues;
  auto invalid = [&](std::string message) {
    issues.push_back({ErrorKind::kValidation, std::move(message)});
  };
  auto require_file = [&](const std::optional<std::string>& path,
                          std::string_view what, bool required) {
    if (!path) {
      if (required) invalid("missing required " + std::string(what));
      return;
    }
    if (!IsFile(*path)) {
      issues.push_back({ErrorKind::kIo, std::string(what) + " '" + *path +
                                            "' does not exist or is not a file"});
    }
  };

  const std::string& cmd = config.command;
  if (!kCommands.contains(cmd)) {
    invalid("unknown subcommand '" + cmd + "'");
    return issues;
  }

  const bool needs_answers = cmd == "eval" || cmd == "analyze-ambiguity";
  require_file(config.data, "data file", cmd != "train-lm");
  require_file(config.answers, "answers file", needs_answers);

  if (cmd == "classify-types" && config.task != Task::kA) {
    invalid("classify-types applies to task A only");
  }
  if (cmd == "analyze-ambiguity" && config.task != Task::kA) {
    invalid("ambiguity analysis applies to task A only");
  }

  if (cmd == "ingest") {
    if (config.sample && *config.sample == 0) invalid("sample size must be > 0");
    if (config.out_answers && !config.answers) {
      invalid("out-answers needs an answers file to copy labels from");
    }
  }

  if (cmd == "train-lm") {
    require_file(config.corpus, "corpus file", false);
    if (!config.corpus && !config.data) {
      invalid("train-lm needs a corpus file or labeled task A data");
    }
    if (config.data && config.task != Task::kA) {
      invalid("train-lm draws extra sentences from task A data only");
    }
    if (config.data && !config.answers) {
      invalid("train-lm needs answers to select the valid sentences of data");
    }
    if (!config.out) invalid("train-lm needs an output model path (--out)");
  }
  if (cmd == "train-lm" || cmd == "score") {
    if (config.ngram_order < 1) invalid("n-gram order must be >= 1");
    if (!(config.ngram_alpha > 0.0) || !std::isfinite(config.ngram_alpha)) {
      invalid("smoothing alpha must be a positive real");
    }
  }
  if (cmd == "score") {
    require_file(config.model, "n-gram model file", true);
    if (config.method != "lm" && config.method != "masked") {
      invalid("method must be 'lm' or 'masked', got '" + config.method + "'");
    }
  }

  const bool needs_members = cmd == "ensemble" || cmd == "analyze-ambiguity";
  if (needs_members && config.members.empty()) {
    invalid(cmd + " needs at least one --member");
  }
  for (const MemberSpec& member : config.members) {
    require_file(member.path, "member predictions", true);
    if (needs_members && !member.dev_score) {
      invalid("member '" + member.path + "' needs a dev score (PATH@SCORE)");
    }
    if (member.dev_score &&
        !(*member.dev_score > 0.0 && *member.dev_score <= 1.0)) {
      invalid("member '" + member.path + "' dev score " +
              std::to_string(*member.dev_score) + " must lie in (0,1]");
    }
  }
  for (const auto& [name, info] : config.model_info) {
    if (info.dev_score && !(*info.dev_score >= 0.0 && *info.dev_score <= 1.0)) {
      invalid("model '" + name + "' dev_score outside [0,1]");
    }
  }
  if (cmd == "eval") require_file(config.predictions, "predictions file", true);

  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    invalid("threshold must lie in [0,1]");
  }
  if (!(config.band.lower <= config.band.upper)) {
    invalid("ambiguity band lower bound " + std::to_string(config.band.lower) +
            " exceeds upper bound " + std::to_string(config.band.upper));
  } else if (!(config.band.lower >= 0.0 && config.band.upper <= 1.0)) {
    invalid("ambiguity band must lie within [0,1]");
  } else if (!config.band.Contains(config.threshold)) {
    invalid("threshold must lie inside the ambiguity band");
  }
  return issues;
}

}  // namespace comve::cli
