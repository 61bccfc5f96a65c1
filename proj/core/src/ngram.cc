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
#include "comve/ngram.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "comve/error.h"
#include "comve/io.h"

namespace comve {
namespace {

constexpr char kKeySeparator = '\x1f';
constexpr std::string_view kFormatTag = "comve-ngram";
constexpr int kFormatVersion = 1;

}  // namespace

std::vector<std::string> NGramModel::vocabulary() const {
  std::vector<std::string> out(vocabulary_.begin(), vocabulary_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool NGramModel::InVocabulary(std::string_view token) const {
  return vocabulary_.count(std::string(token)) != 0;
}

std::string_view NGramModel::Canonical(std::string_view token) const {
  if (token == kBegin || InVocabulary(token)) return token;
  return kUnknown;
}

std::string NGramModel::Key(std::span<const std::string> context) const {
  if (context.size() != static_cast<std::size_t>(order_ - 1)) {
    Fail(ErrorKind::kInternal, "context of length " +
                                   std::to_string(context.size()) +
                                   " for an order-" + std::to_string(order_) +
                                   " model");
  }
  std::string key;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i > 0) key.push_back(kKeySeparator);
    key += Canonical(context[i]);
  }
  return key;
}

std::size_t NGramModel::Count(std::span<const std::string> context,
                              std::string_view token) const {
  auto it = counts_.find(Key(context));
  if (it == counts_.end()) return 0;
  auto next = it->second.next.find(std::string(Canonical(token)));
  return next == it->second.next.end() ? 0 : next->second;
}

std::size_t NGramModel::ContextTotal(std::span<const std::string> context) const {
  auto it = counts_.find(Key(context));
  return it == counts_.end() ? 0 : it->second.total;
}

double NGramModel::Probability(std::span<const std::string> context,
                               std::string_view token) const {
  const std::string key = Key(context);
  std::size_t count = 0;
  std::size_t total = 0;
  if (auto it = counts_.find(key); it != counts_.end()) {
    total = it->second.total;
    auto next = it->second.next.find(std::string(Canonical(token)));
    if (next != it->second.next.end()) count = next->second;
  }
  const double v = static_cast<double>(vocabulary_.size());
  return (static_cast<double>(count) + alpha_) /
         (static_cast<double>(total) + alpha_ * v);
}

double NGramModel::LogProbability(std::span<const std::string> context,
                                  std::string_view token) const {
  return std::log(Probability(context, token));
}

void NGramModel::CheckInvariants() const {
  if (order_ < 1) Fail(ErrorKind::kValidation, "n-gram order must be >= 1");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    Fail(ErrorKind::kValidation, "smoothing alpha must be a positive real");
  }
  if (!InVocabulary(kEnd) || !InVocabulary(kUnknown)) {
    Fail(ErrorKind::kValidation, "vocabulary lacks the end or unknown marker");
  }
  for (const auto& [key, entry] : counts_) {
    std::size_t sum = 0;
    for (const auto& [token, count] : entry.next) {
      if (count == 0) Fail(ErrorKind::kValidation, "zero n-gram count stored");
      if (!InVocabulary(token)) {
        Fail(ErrorKind::kValidation, "counted token '" + token +
                                         "' missing from vocabulary");
      }
      sum += count;
    }
    if (sum != entry.total) {
      Fail(ErrorKind::kValidation, "context total disagrees with its counts");
    }
  }
}

std::string NGramModel::ToJson() const {
  nlohmann::json doc;
  doc["format"] = kFormatTag;
  doc["version"] = kFormatVersion;
  doc["order"] = order_;
  doc["alpha"] = alpha_;
  doc["vocabulary"] = vocabulary();

  std::vector<std::string> keys;
  keys.reserve(counts_.size());
  for (const auto& [key, entry] : counts_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  nlohmann::json contexts = nlohmann::json::array();
  for (const std::string& key : keys) {
    const ContextCounts& entry = counts_.at(key);
    std::vector<std::string> context;
    if (order_ > 1) {
      std::size_t start = 0;
      for (;;) {
        std::size_t end = key.find(kKeySeparator, start);
        context.push_back(key.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
      }
    }
    std::map<std::string, std::size_t> next(entry.next.begin(),
                                            entry.next.end());
    contexts.push_back(
        {{"context", context}, {"total", entry.total}, {"next", next}});
  }
  doc["contexts"] = std::move(contexts);
  return doc.dump(1) + "\n";
}

NGramModel NGramModel::FromJson(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, std::string("n-gram model: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormatTag ||
        doc.at("version").get<int>() != kFormatVersion) {
      Fail(ErrorKind::kParse, "n-gram model: unsupported format or version");
    }
    NGramModel model(doc.at("order").get<int>(), doc.at("alpha").get<double>());
    for (const auto& token : doc.at("vocabulary")) {
      model.vocabulary_.insert(token.get<std::string>());
    }
    for (const auto& item : doc.at("contexts")) {
      auto context = item.at("context").get<std::vector<std::string>>();
      ContextCounts entry;
      entry.total = item.at("total").get<std::size_t>();
      for (const auto& [token, count] : item.at("next").items()) {
        entry.next.emplace(token, count.get<std::size_t>());
      }
      if (!model.counts_.emplace(model.Key(context), std::move(entry)).second) {
        Fail(ErrorKind::kValidation, "n-gram model: duplicate context");
      }
    }
    model.CheckInvariants();
    return model;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, std::string("n-gram model: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInternal) {
      Fail(ErrorKind::kValidation, std::string("n-gram model: ") + e.what());
    }
    throw;
  }
}

void NGramModel::Save(const std::string& path) const {
  WriteTextFile(path, ToJson());
}

NGramModel NGramModel::Load(const std::string& path) {
  try {
    return FromJson(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    Fail(e.kind(), path + ": " + e.what());
  }
}

NGramModel TrainNGram(const std::vector<TokenSeq>& corpus, int order,
                      double alpha) {
  if (corpus.empty()) Fail(ErrorKind::kValidation, "training corpus is empty");
  NGramModel model(order, alpha);
  model.vocabulary_.emplace(NGramModel::kEnd);
  model.vocabulary_.emplace(NGramModel::kUnknown);
  model.CheckInvariants();
  for (const TokenSeq& sentence : corpus) {
    for (const std::string& token : sentence.tokens) {
      model.vocabulary_.insert(token);
    }
  }
  const std::size_t width = static_cast<std::size_t>(order - 1);
  for (const TokenSeq& sentence : corpus) {
    if (sentence.empty()) {
      Fail(ErrorKind::kValidation, "training corpus holds an empty sentence");
    }
    const std::vector<std::string> padded = PadSentence(sentence, order);
    const std::span<const std::string> view(padded);
    for (std::size_t j = width; j < padded.size(); ++j) {
      auto& entry = model.counts_[model.Key(view.subspan(j - width, width))];
      ++entry.next[padded[j]];
      ++entry.total;
    }
  }
  return model;
}

std::vector<std::string> PadSentence(const TokenSeq& sentence, int order) {
  std::vector<std::string> padded(static_cast<std::size_t>(order - 1),
                                  std::string(NGramModel::kBegin));
  padded.insert(padded.end(), sentence.tokens.begin(), sentence.tokens.end());
  padded.emplace_back(NGramModel::kEnd);
  return padded;
}

std::vector<double> EventLogProbs(const NGramModel& model,
                                  const TokenSeq& sentence) {
  if (sentence.empty()) {
    Fail(ErrorKind::kValidation, "cannot score an empty sentence");
  }
  const std::vector<std::string> padded = PadSentence(sentence, model.order());
  const std::span<const std::string> view(padded);
  const std::size_t width = static_cast<std::size_t>(model.order() - 1);
  std::vector<double> out;
  out.reserve(sentence.size() + 1);
  for (std::size_t j = width; j < padded.size(); ++j) {
    out.push_back(model.LogProbability(view.subspan(j - width, width), padded[j]));
  }
  return out;
}

double SentenceLogProb(const NGramModel& model, const TokenSeq& sentence) {
  const std::vector<double> events = EventLogProbs(model, sentence);
  double sum = 0.0;
  for (double x : events) sum += x;
  return sum / static_cast<double>(events.size());
}

std::vector<TokenSeq> ParseCorpus(std::string_view text) {
  std::vector<TokenSeq> corpus;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    try {
      corpus.push_back(Tokenize(line));
    } catch (const Error&) {
      // blank or punctuation-only line
    }
    start = end + 1;
  }
  return corpus;
}

std::vector<TokenSeq> ReadCorpus(const std::string& path) {
  return ParseCorpus(ReadTextFile(path));
}

}  // namespace comve
