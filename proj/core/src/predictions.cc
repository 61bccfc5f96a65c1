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
#include "comve/predictions.h"

#include <ostream>

#include <nlohmann/json.hpp>

#include "comve/error.h"
#include "comve/io.h"
#include "text_util.h"

namespace comve {
namespace {

std::string Where(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line) + ": ";
}

SoftPrediction ParseLine(std::string_view line, std::string_view origin,
                         std::size_t line_no) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, Where(origin, line_no) + e.what());
  }
  SoftPrediction prediction;
  try {
    if (!doc.is_object()) {
      Fail(ErrorKind::kParse, Where(origin, line_no) + "expected a JSON object");
    }
    const auto& id = doc.at("id");
    if (!id.is_number_unsigned() && !(id.is_number_integer() && id.get<long long>() >= 0)) {
      Fail(ErrorKind::kParse,
           Where(origin, line_no) + "'id' must be a non-negative integer");
    }
    prediction.instance_id = id.get<InstanceId>();
    prediction.task = ParseTask(doc.at("task").get<std::string>());
    for (const auto& p : doc.at("probs")) {
      if (!p.is_number()) {
        Fail(ErrorKind::kParse, Where(origin, line_no) + "'probs' must hold numbers");
      }
      prediction.probs.push_back(p.get<double>());
    }
    prediction.model = doc.at("model").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, Where(origin, line_no) + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    Fail(e.kind(), Where(origin, line_no) + e.what());
  }
  if (internal::Trim(prediction.model).empty()) {
    Fail(ErrorKind::kValidation, Where(origin, line_no) + "'model' is empty");
  }
  return prediction;
}

}  // namespace

std::vector<SoftPrediction> ParsePredictions(std::string_view jsonl,
                                             const Dataset& dataset,
                                             std::string_view origin) {
  std::vector<std::optional<SoftPrediction>> slots(dataset.size());
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    std::size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = internal::Trim(jsonl.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;

    SoftPrediction prediction = ParseLine(line, origin, line_no);
    if (prediction.task != dataset.task()) {
      Fail(ErrorKind::kValidation,
           Where(origin, line_no) + "task " +
               std::string(TaskName(prediction.task)) + " prediction for a task " +
               std::string(TaskName(dataset.task())) + " dataset");
    }
    try {
      prediction.Validate(kInterchangeSumTolerance);
    } catch (const Error& e) {
      Fail(e.kind(), Where(origin, line_no) + e.what());
    }
    auto index = dataset.IndexOf(prediction.instance_id);
    if (!index) {
      Fail(ErrorKind::kCoverage, Where(origin, line_no) + "id " +
                                     std::to_string(prediction.instance_id) +
                                     " is not in the dataset");
    }
    if (slots[*index]) {
      Fail(ErrorKind::kCoverage, Where(origin, line_no) + "duplicate id " +
                                     std::to_string(prediction.instance_id));
    }
    slots[*index] = std::move(prediction);
  }

  std::vector<SoftPrediction> out;
  out.reserve(slots.size());
  std::vector<InstanceId> ids = dataset.ids();
  std::size_t missing = 0;
  std::string examples;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      if (missing < 5) examples += (missing ? ", " : "") + std::to_string(ids[i]);
      ++missing;
      continue;
    }
    out.push_back(std::move(*slots[i]));
  }
  if (missing > 0) {
    Fail(ErrorKind::kCoverage,
         std::string(origin) + ": " + std::to_string(missing) + " of " +
             std::to_string(ids.size()) + " dataset ids have no prediction (" +
             examples + (missing > 5 ? ", ..." : "") + ")");
  }
  return out;
}

std::vector<SoftPrediction> LoadExternalPredictions(const std::string& path,
                                                    const Dataset& dataset) {
  return ParsePredictions(ReadTextFile(path), dataset, path);
}

std::string PredictionToJson(const SoftPrediction& prediction) {
  nlohmann::ordered_json doc;
  doc["id"] = prediction.instance_id;
  doc["task"] = TaskName(prediction.task);
  doc["probs"] = prediction.probs;
  doc["model"] = prediction.model;
  return doc.dump();
}

void WritePredictions(const std::vector<SoftPrediction>& predictions,
                      std::ostream& out) {
  for (const SoftPrediction& prediction : predictions) {
    out << PredictionToJson(prediction) << '\n';
  }
}

}  // namespace comve
