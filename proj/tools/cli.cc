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
#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "comve/analysis.h"
#include "comve/csv.h"
#include "comve/data.h"
#include "comve/ensemble.h"
#include "comve/io.h"
#include "comve/ngram.h"
#include "comve/predictions.h"
#include "comve/report.h"
#include "comve/scoring.h"
#include "comve/taxonomy.h"
#include "run_config.h"

namespace comve::cli {
namespace {

// A flag that may be registered on several subcommands.
template <typename T>
struct Flag {
  T value{};
  std::vector<CLI::Option*> options;

  bool given() const {
    return std::any_of(options.begin(), options.end(),
                       [](const CLI::Option* o) { return o->count() > 0; });
  }
};

struct Flags {
  Flag<std::string> config;
  Flag<std::uint64_t> seed;
  Flag<std::string> json;
  Flag<double> threshold;
  Flag<std::string> band;

  Flag<std::string> task;
  Flag<std::string> data;
  Flag<std::string> answers;
  Flag<std::string> split;
  Flag<std::vector<std::string>> members;
  Flag<std::string> predictions;
  Flag<std::string> corpus;
  Flag<std::string> model;
  Flag<int> order;
  Flag<double> alpha;
  Flag<std::string> method;
  Flag<std::string> name;
  Flag<std::string> out;
  Flag<std::string> out_answers;
  Flag<std::string> labels;
  Flag<std::size_t> sample;
};

template <typename T>
void Add(CLI::App* app, const std::string& spec, Flag<T>& flag,
         const std::string& help) {
  flag.options.push_back(app->add_option(spec, flag.value, help));
}

template <typename T>
void Apply(const Flag<T>& flag, std::optional<T>& target) {
  if (flag.given()) target = flag.value;
}

template <typename T>
void Apply(const Flag<T>& flag, T& target) {
  if (flag.given()) target = flag.value;
}

void Emit(const std::optional<std::string>& path, const std::string& contents,
          std::ostream& out) {
  if (path) {
    WriteTextFile(*path, contents);
  } else {
    out << contents;
  }
}

// --- ingest ----------------------------------------------------------------

int RunIngest(const RunConfig& config, std::ostream& out) {
  Dataset dataset =
      LoadDataset(config.task, *config.data, config.answers, config.split);
  if (config.sample) dataset = Sample(dataset, *config.sample, config.seed);

  out << "task " << TaskName(dataset.task()) << ", split "
      << SplitName(dataset.split()) << ", " << dataset.size() << " instances, "
      << (dataset.labeled() ? "labeled" : "unlabeled") << "\n";
  std::map<int, std::size_t> balance;
  if (dataset.labeled()) {
    balance = LabelBalance(dataset);
    for (const auto& [label, count] : balance) {
      out << "  label " << label << ": " << count << "\n";
    }
  }
  if (config.out) {
    std::ostringstream csv;
    WriteDataCsv(dataset, csv);
    WriteTextFile(*config.out, csv.str());
  }
  if (config.out_answers) {
    std::ostringstream csv;
    WriteAnswersCsv(dataset, csv);
    WriteTextFile(*config.out_answers, csv.str());
  }
  if (config.json_out) {
    std::ostringstream json;
    json << "{\"task\":\"" << TaskName(dataset.task()) << "\",\"split\":\""
         << SplitName(dataset.split()) << "\",\"n_instances\":" << dataset.size()
         << ",\"labeled\":" << (dataset.labeled() ? "true" : "false")
         << ",\"label_balance\":{";
    bool first = true;
    for (const auto& [label, count] : balance) {
      json << (first ? "" : ",") << "\"" << label << "\":" << count;
      first = false;
    }
    json << "}}\n";
    WriteTextFile(*config.json_out, json.str());
  }
  return kExitOk;
}

// --- classify-types --------------------------------------------------------

int RunClassifyTypes(const RunConfig& config, std::ostream& out,
                     std::ostream& err) {
  const Dataset dataset =
      LoadTaskA(*config.data, config.answers, config.split);
  const std::vector<SampleType> types = ClassifyDataset(dataset);
  const TypeCounts counts = CountKinds(types);
  const std::vector<InstanceId> ids = dataset.ids();

  std::ostringstream assignments;
  csv::WriteRow(assignments, {"id", "type"});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    csv::WriteRow(assignments, {std::to_string(ids[i]),
                                std::string(SampleKindName(types[i].kind))});
    if (types[i].degenerate) {
      err << "warning: instance " << ids[i]
          << ": sentences are identical after normalization; counted as TypeC\n";
    }
  }
  if (config.out) {
    WriteTextFile(*config.out, assignments.str());
  } else {
    out << assignments.str() << "\n";
  }

  out << "{TypeA:" << counts.type_a << ", TypeB:" << counts.type_b
      << ", TypeC:" << counts.type_c << "}\n";
  out << "Type    Count   Percent\n";
  for (SampleKind kind : kAllSampleKinds) {
    const std::size_t n = counts[kind];
    const double share =
        counts.total() == 0 ? 0.0 : static_cast<double>(n) / counts.total();
    char line[64];
    std::snprintf(line, sizeof(line), "%-8s%-8zu%s\n",
                  std::string(SampleKindName(kind)).c_str(), n,
                  FormatPercent(share).c_str());
    out << line;
  }
  out << "total   " << counts.total() << "\n";
  if (counts.degenerate > 0) {
    out << "degenerate pairs (in TypeC): " << counts.degenerate << "\n";
  }

  if (config.json_out) {
    std::ostringstream json;
    json << "{\"n_instances\":" << counts.total() << ",\"TypeA\":"
         << counts.type_a << ",\"TypeB\":" << counts.type_b
         << ",\"TypeC\":" << counts.type_c
         << ",\"degenerate\":" << counts.degenerate << "}\n";
    WriteTextFile(*config.json_out, json.str());
  }
  return kExitOk;
}

// --- train-lm --------------------------------------------------------------

int RunTrainLm(const RunConfig& config, std::ostream& out) {
  std::vector<TokenSeq> corpus;
  if (config.corpus) corpus = ReadCorpus(*config.corpus);
  const std::size_t from_corpus = corpus.size();
  if (config.data) {
    const Dataset dataset =
        LoadTaskA(*config.data, config.answers, config.split);
    for (const InstanceA& instance : dataset.task_a()) {
      // The label marks the nonsensical sentence; keep the other one.
      corpus.push_back(
          Tokenize(*instance.label == 1 ? instance.sent0 : instance.sent1));
    }
  }
  const NGramModel model =
      TrainNGram(corpus, config.ngram_order, config.ngram_alpha);
  model.Save(*config.out);
  out << "trained order-" << model.order() << " model (alpha "
      << model.alpha() << ") on " << corpus.size() << " sentences ("
      << from_corpus << " from corpus), vocabulary " << model.vocabulary_size()
      << "\n";
  return kExitOk;
}

// --- score -----------------------------------------------------------------

int RunScore(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Dataset dataset =
      LoadDataset(config.task, *config.data, config.answers, config.split);
  const NGramModel model = NGramModel::Load(*config.model);
  const ScoringMethod method = config.method == "masked"
                                   ? ScoringMethod::kMaskedToken
                                   : ScoringMethod::kLanguageModel;
  const std::string name = config.model_name.value_or(
      method == ScoringMethod::kMaskedToken ? "ngram-masked" : "ngram-lm");
  const ScoringSummary summary = ScoreDataset(model, dataset, method, name);
  if (summary.fallbacks > 0) {
    err << "note: " << summary.fallbacks
        << " non-TypeA pairs scored by sentence likelihood\n";
  }
  std::ostringstream jsonl;
  WritePredictions(summary.predictions, jsonl);
  Emit(config.out, jsonl.str(), out);
  return kExitOk;
}

// --- members ---------------------------------------------------------------

struct LoadedMember {
  ModelInfo info;
  std::vector<SoftPrediction> predictions;
};

std::vector<LoadedMember> LoadMembers(const RunConfig& config,
                                      const Dataset& dataset) {
  std::vector<LoadedMember> members;
  for (const MemberSpec& spec : config.members) {
    LoadedMember member;
    member.predictions = LoadExternalPredictions(spec.path, dataset);
    std::string name =
        member.predictions.empty() ? spec.path : member.predictions[0].model;
    for (const SoftPrediction& p : member.predictions) {
      if (p.model != name) {
        Fail(ErrorKind::kValidation, spec.path + ": mixes model names '" +
                                         name + "' and '" + p.model + "'");
      }
    }
    if (auto it = config.model_info.find(name); it != config.model_info.end()) {
      member.info = it->second;
    }
    member.info.name = name;
    if (spec.dev_score) member.info.dev_score = spec.dev_score;
    member.info.Validate();
    members.push_back(std::move(member));
  }
  return members;
}

EnsembleConfig ConfigFor(const RunConfig& config,
                         const std::vector<LoadedMember>& members) {
  std::vector<ModelInfo> infos;
  for (const LoadedMember& m : members) infos.push_back(m.info);
  return MakeEnsembleConfig(std::move(infos), config.threshold, config.band);
}

std::vector<std::vector<SoftPrediction>> PredictionsOf(
    const std::vector<LoadedMember>& members) {
  std::vector<std::vector<SoftPrediction>> out;
  for (const LoadedMember& m : members) out.push_back(m.predictions);
  return out;
}

std::vector<NamedLabels> LabelsOf(const std::vector<LoadedMember>& members,
                                  double threshold) {
  std::vector<NamedLabels> out;
  for (const LoadedMember& m : members) {
    out.push_back({m.info.name, HardenAll(m.predictions, threshold)});
  }
  return out;
}

void AttachMemberInfo(EvalReport& report,
                      const std::vector<LoadedMember>& members,
                      const std::vector<double>& weights) {
  for (std::size_t i = 0; i < report.members.size() && i < members.size(); ++i) {
    report.members[i].info = members[i].info;
    if (i < weights.size()) report.members[i].weight = weights[i];
  }
}

// --- ensemble --------------------------------------------------------------

int RunEnsembleCommand(const RunConfig& config, std::ostream& out) {
  const Dataset dataset =
      LoadDataset(config.task, *config.data, config.answers, config.split);
  const std::vector<LoadedMember> members = LoadMembers(config, dataset);
  const EnsembleConfig ensemble = ConfigFor(config, members);
  const std::vector<EnsembleOutput> outputs =
      RunEnsemble(dataset, PredictionsOf(members), ensemble);

  std::ostringstream jsonl;
  WritePredictions(
      ToSoftPredictions(outputs, config.model_name.value_or("ensemble")), jsonl);
  std::ostringstream labels;
  csv::WriteRow(labels, {"id", "label"});
  std::size_t ambiguous = 0;
  for (const EnsembleOutput& o : outputs) {
    const std::string label =
        o.task == Task::kA ? std::to_string(o.hard_label)
                           : std::string(1, static_cast<char>('A' + o.hard_label));
    csv::WriteRow(labels, {std::to_string(o.instance_id), label});
    if (o.ambiguous) ++ambiguous;
  }
  if (config.out) {
    WriteTextFile(*config.out, jsonl.str());
  }
  if (config.labels_out) {
    WriteTextFile(*config.labels_out, labels.str());
  }

  std::ostream& summary = out;
  summary << "ensemble of " << members.size() << " member"
          << (members.size() == 1 ? "" : "s") << " over " << dataset.size()
          << " task " << TaskName(dataset.task()) << " instances\n";
  for (std::size_t i = 0; i < members.size(); ++i) {
    char weight[32];
    std::snprintf(weight, sizeof(weight), "%.6f", ensemble.weights[i]);
    summary << "  " << members[i].info.name << "  weight " << weight << "\n";
  }
  if (dataset.task() == Task::kA) {
    summary << "ambiguous: " << ambiguous << "\n";
  }
  if (!config.out && !config.labels_out) summary << labels.str();
  if (config.json_out) {
    EvalReport report;
    if (dataset.labeled()) {
      report = Evaluate(dataset, ToSoftPredictions(outputs), config.threshold,
                        config.band, LabelsOf(members, config.threshold));
      AttachMemberInfo(report, members, ensemble.weights);
      WriteTextFile(*config.json_out, RenderReport(report).json);
    } else {
      std::ostringstream json;
      json << "{\"n_instances\":" << dataset.size()
           << ",\"n_ambiguous\":" << ambiguous << "}\n";
      WriteTextFile(*config.json_out, json.str());
    }
  }
  return kExitOk;
}

// --- eval ------------------------------------------------------------------

int RunEval(const RunConfig& config, std::ostream& out) {
  const Dataset dataset =
      LoadDataset(config.task, *config.data, config.answers, config.split);
  const std::vector<SoftPrediction> predictions =
      LoadExternalPredictions(*config.predictions, dataset);
  const std::vector<LoadedMember> members = LoadMembers(config, dataset);
  EvalReport report = Evaluate(dataset, predictions, config.threshold,
                               config.band, LabelsOf(members, config.threshold));
  std::vector<double> weights;
  const bool all_scored =
      !members.empty() &&
      std::all_of(members.begin(), members.end(),
                  [](const LoadedMember& m) { return m.info.dev_score.has_value(); });
  if (all_scored) weights = ConfigFor(config, members).weights;
  AttachMemberInfo(report, members, weights);

  const RenderedReport rendered = RenderReport(report);
  out << rendered.text;
  if (config.json_out) WriteTextFile(*config.json_out, rendered.json);
  return kExitOk;
}

// --- analyze-ambiguity -----------------------------------------------------

int RunAnalyzeAmbiguity(const RunConfig& config, std::ostream& out) {
  const Dataset dataset =
      LoadTaskA(*config.data, config.answers, config.split);
  const std::vector<LoadedMember> members = LoadMembers(config, dataset);
  const EnsembleConfig ensemble = ConfigFor(config, members);
  const std::vector<EnsembleOutput> outputs =
      RunEnsemble(dataset, PredictionsOf(members), ensemble);
  const std::vector<NamedLabels> labels = LabelsOf(members, config.threshold);

  const ReplacementTable table =
      AmbiguityReplacement(outputs, labels, GoldLabels(dataset));
  EvalReport report =
      Evaluate(dataset, ToSoftPredictions(outputs, config.model_name.value_or("ensemble")),
               config.threshold, config.band, labels);
  AttachMemberInfo(report, members, ensemble.weights);

  const RenderedReport rendered = RenderReport(report, table);
  out << rendered.text;
  if (config.json_out) WriteTextFile(*config.json_out, rendered.json);
  return kExitOk;
}

int Dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string& cmd = config.command;
  if (cmd == "ingest") return RunIngest(config, out);
  if (cmd == "classify-types") return RunClassifyTypes(config, out, err);
  if (cmd == "train-lm") return RunTrainLm(config, out);
  if (cmd == "score") return RunScore(config, out, err);
  if (cmd == "ensemble") return RunEnsembleCommand(config, out);
  if (cmd == "eval") return RunEval(config, out);
  if (cmd == "analyze-ambiguity") return RunAnalyzeAmbiguity(config, out);
  Fail(ErrorKind::kInternal, "unhandled subcommand '" + cmd + "'");
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kInternal: return kExitInternal;
    default: return kExitValidation;
  }
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Commonsense validation evaluation and ensembling harness",
               "comve"};
  app.require_subcommand(1, 1);

  Flags f;
  Add(&app, "--config", f.config, "Key/value run configuration file");
  Add(&app, "--seed", f.seed, "Seed for randomized steps");
  Add(&app, "--json", f.json, "Write a machine-readable report here");
  Add(&app, "--threshold", f.threshold, "Hardening threshold (default 0.5)");
  Add(&app, "--band", f.band, "Ambiguity band lo,hi (default 0.4,0.6)");

  auto data_flags = [&](CLI::App* sub) {
    Add(sub, "--task", f.task, "A or B (default A)");
    Add(sub, "--data", f.data, "Data CSV");
    Add(sub, "--answers", f.answers, "Answers CSV");
    Add(sub, "--split", f.split, "train, dev or test");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "Load, validate and summarize a dataset");
  data_flags(ingest);
  Add(ingest, "--sample", f.sample, "Keep a seeded random subset of this size");
  Add(ingest, "--out", f.out, "Write the (sampled) data CSV");
  Add(ingest, "--out-answers", f.out_answers, "Write the (sampled) answers CSV");

  CLI::App* classify = app.add_subcommand("classify-types", "Assign TypeA/B/C to task A pairs");
  data_flags(classify);
  Add(classify, "--out", f.out, "Write id,type CSV here instead of stdout");

  CLI::App* train = app.add_subcommand("train-lm", "Train an n-gram language model");
  data_flags(train);
  Add(train, "--corpus", f.corpus, "Text corpus, one sentence per line");
  Add(train, "--order", f.order, "n-gram order (default 3)");
  Add(train, "--alpha", f.alpha, "Additive smoothing (default 0.1)");
  Add(train, "--out", f.out, "Model file to write");

  CLI::App* score = app.add_subcommand("score", "Score a dataset with an n-gram model");
  data_flags(score);
  Add(score, "--model", f.model, "Model file from train-lm");
  Add(score, "--method", f.method, "lm or masked (default lm)");
  Add(score, "--name", f.name, "Model name written to predictions");
  Add(score, "--out", f.out, "Predictions JSONL (default stdout)");

  CLI::App* ensemble = app.add_subcommand("ensemble", "Weighted-sum ensemble of member predictions");
  data_flags(ensemble);
  Add(ensemble, "--member", f.members, "Member predictions PATH@DEV_SCORE (repeatable)");
  Add(ensemble, "--name", f.name, "Model name for the output (default ensemble)");
  Add(ensemble, "--out", f.out, "Ensemble predictions JSONL");
  Add(ensemble, "--labels", f.labels, "Hard label CSV id,label");

  CLI::App* eval = app.add_subcommand("eval", "Accuracy report for a prediction file");
  data_flags(eval);
  Add(eval, "--pred", f.predictions, "Predictions JSONL to evaluate");
  Add(eval, "--member", f.members, "Member predictions for agreement (repeatable)");

  CLI::App* ambiguity = app.add_subcommand("analyze-ambiguity", "Replace ambiguous ensemble outputs by each member's");
  data_flags(ambiguity);
  Add(ambiguity, "--member", f.members, "Member predictions PATH@DEV_SCORE (repeatable)");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "comve: " << e.what() << "\n";
    return kExitValidation;
  }

  RunConfig config;
  try {
    config.command = app.get_subcommands().front()->get_name();
    if (f.config.given()) {
      ApplyConfigText(ReadTextFile(f.config.value), f.config.value, config);
    }
    if (f.task.given()) config.task = ParseTask(f.task.value);
    if (f.split.given()) config.split = ParseSplit(f.split.value);
    if (f.band.given()) config.band = ParseBand(f.band.value);
    if (f.members.given()) {
      config.members.clear();
      for (const std::string& m : f.members.value) {
        config.members.push_back(ParseMemberSpec(m));
      }
    }
    Apply(f.seed, config.seed);
    Apply(f.json, config.json_out);
    Apply(f.threshold, config.threshold);
    Apply(f.data, config.data);
    Apply(f.answers, config.answers);
    Apply(f.predictions, config.predictions);
    Apply(f.corpus, config.corpus);
    Apply(f.model, config.model);
    Apply(f.order, config.ngram_order);
    Apply(f.alpha, config.ngram_alpha);
    Apply(f.method, config.method);
    Apply(f.name, config.model_name);
    Apply(f.out, config.out);
    Apply(f.out_answers, config.out_answers);
    Apply(f.labels, config.labels_out);
    Apply(f.sample, config.sample);
  } catch (const Error& e) {
    err << "comve: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  }

  const std::vector<ConfigIssue> issues = ValidateConfig(config);
  if (!issues.empty()) {
    int code = kExitValidation;
    for (const ConfigIssue& issue : issues) {
      err << "comve: " << ErrorKindName(issue.kind) << ": " << issue.message
          << "\n";
      if (issue.kind == ErrorKind::kIo) code = kExitIo;
    }
    return code;
  }

  try {
    return Dispatch(config, out, err);
  } catch (const Error& e) {
    err << "comve: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "comve: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace comve::cli
