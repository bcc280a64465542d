// Copyright 2026 The procaug Authors
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
#include <filesystem>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "procaug/augmenters.h"
#include "procaug/corpus.h"
#include "procaug/eval.h"
#include "procaug/hyperopt.h"
#include "procaug/lexicon.h"
#include "procaug/provider.h"
#include "procaug/stats.h"
#include "procaug/util.h"

namespace procaug::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kTool = "procaug";
constexpr std::string_view kVersion = "0.1.0";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string command;
  std::string corpus;
  std::string technique;
  std::vector<std::string> params;
  std::string task;
  int folds = 5;
  int trials = 25;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string provider = "stub";
  std::string lexicon;
  int workers = 1;
  std::string augmented;
  std::string manifest;
};

// Flags that fully determine a run's outputs. The output directory and the
// worker count are deliberately left out.
std::vector<std::string> CanonicalArgs(const Options& o) {
  std::vector<std::string> args = {o.command};
  auto add = [&args](std::string flag, const std::string& value) {
    if (value.empty()) return;
    args.push_back(std::move(flag));
    args.push_back(value);
  };
  auto absolute = [](const std::string& path) {
    return path.empty() ? path : fs::absolute(path).lexically_normal().string();
  };
  add("--corpus", absolute(o.corpus));
  add("--augmented", absolute(o.augmented));
  add("--technique", o.technique);
  if (!o.params.empty()) {
    args.push_back("--params");
    args.insert(args.end(), o.params.begin(), o.params.end());
  }
  add("--task", o.task);
  if (o.command == "evaluate" || o.command == "optimize") {
    add("--folds", std::to_string(o.folds));
  }
  if (o.command == "optimize") add("--trials", std::to_string(o.trials));
  if (o.seed) add("--seed", std::to_string(*o.seed));
  if (o.command != "analyze") {
    add("--provider", o.provider);
    add("--lexicon", absolute(o.lexicon));
  }
  return args;
}

fs::path OutPath(const Options& o, std::string_view name) {
  return fs::path(o.out) / std::string(name);
}

void WriteManifest(const Options& o, const json& config, const json& seeds,
                   const std::vector<std::string>& outputs) {
  json manifest = {{"tool", kTool},
                   {"version", kVersion},
                   {"command", o.command},
                   {"args", CanonicalArgs(o)},
                   {"config", config},
                   {"seeds", seeds},
                   {"outputs", outputs}};
  WriteFileAtomic(OutPath(o, "manifest.json").string(), manifest.dump(2) + "\n");
}

// Resolved lexicon and provider for commands that augment.
struct Context {
  Lexicon lexicon;
  std::unique_ptr<ParaphraseProvider> provider;

  AugmentContext view() { return {&lexicon, provider.get(), nullptr}; }
};

std::unique_ptr<Context> LoadContext(const Options& o) {
  auto c = std::make_unique<Context>();
  c->lexicon = LoadLexicon(o.lexicon.empty() ? BundledLexiconDirectory()
                                             : o.lexicon);
  c->provider = MakeProvider(o.provider, c->lexicon);
  return c;
}

TechniqueConfig BuildConfig(const std::string& technique_id,
                            const std::vector<std::string>& params) {
  const Technique& technique = FindTechnique(technique_id);
  TechniqueConfig config;
  config.technique_id = technique.id;
  for (const std::string& kv : params) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--params expects key=value, got '" + kv + "'");
    }
    const std::string name = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    if (const ParamSpec* spec = technique.space.Find(name)) {
      ParamValue value = ParseParamValue(*spec, text);
      if (name == kAugmentationFactor) {
        config.n_aug = std::get<std::int64_t>(value);
      } else {
        config.params[name] = std::move(value);
      }
    } else if (technique.fixed.contains(name)) {
      config.params[name] = text;  // checked against the pin below
    } else {
      throw ConfigError("technique " + technique.id + " has no parameter '" +
                        name + "'");
    }
  }
  return ResolveConfig(config);
}

std::uint64_t RequireSeed(const Options& o) {
  if (!o.seed) throw UsageError("--seed is required");
  return *o.seed;
}

void ReportWarnings(const std::vector<std::string>& warnings,
                    std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

int Augment(const Options& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = RequireSeed(o);
  const TechniqueConfig config = BuildConfig(o.technique, o.params);
  const Corpus corpus = ReadCorpusFile(o.corpus);
  auto context = LoadContext(o);

  const CorpusAugmentation augmentation =
      AugmentCorpus(corpus, config, context->view(), seed, o.workers);
  ReportWarnings(augmentation.warnings, err);
  if (!augmentation.no_op_documents.empty()) {
    err << "note: " << augmentation.no_op_documents.size()
        << " document(s) offered nothing for " << config.technique_id
        << " to act on\n";
  }
  const Corpus merged = MergeCorpora(corpus, augmentation.synthetic);
  const std::vector<Violation> violations = ValidateCorpus(merged);
  if (!violations.empty()) {
    throw std::runtime_error("augmented corpus is invalid: " +
                             violations.front().rule + " at " +
                             violations.front().element);
  }
  const StatsDelta delta = CompareStats(corpus, augmentation.synthetic);

  WriteCorpusFile(merged, OutPath(o, "augmented.json").string());
  WriteFileAtomic(OutPath(o, "stats.csv").string(),
                  std::string(kStatsCsvHeader) + "\n" +
                      StatsCsvRow(config.technique_id, delta));
  WriteFileAtomic(OutPath(o, "stats.json").string(),
                  StatsDeltaToJson(delta).dump(2) + "\n");
  WriteManifest(o, ConfigToJson(config), {{"global", seed}},
                {"augmented.json", "stats.csv", "stats.json"});
  out << "augmented " << corpus.documents.size() << " documents into "
      << merged.documents.size() << " (" << config.technique_id << ")\n";
  return kExitOk;
}

Task TaskFlag(const std::string& name) {
  try {
    return ParseTask(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

CvOptions MakeCvOptions(const Options& o) {
  CvOptions cv;
  cv.folds = o.folds;
  cv.workers = o.workers;
  if (!o.task.empty()) cv.tasks = {TaskFlag(o.task)};
  return cv;
}

int Evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = RequireSeed(o);
  std::optional<TechniqueConfig> config;
  if (!o.technique.empty()) {
    config = BuildConfig(o.technique, o.params);
  } else if (!o.params.empty()) {
    throw UsageError("--params needs --technique");
  }
  const CvOptions cv = MakeCvOptions(o);
  const Corpus corpus = ReadCorpusFile(o.corpus);
  auto context = LoadContext(o);

  const GainReport report =
      CrossValidate(corpus, config, context->view(), seed, cv);
  ReportWarnings(report.warnings, err);
  WriteFileAtomic(OutPath(o, "gain_report.json").string(),
                  report.ToJson().dump(2) + "\n");
  WriteFileAtomic(OutPath(o, "gain_report.csv").string(), report.ToCsv());
  WriteManifest(o, config ? ConfigToJson(*config) : json(nullptr),
                {{"global", seed}}, {"gain_report.json", "gain_report.csv"});
  out << report.ToCsv();
  return kExitOk;
}

int Optimize(const Options& o, std::ostream& out, std::ostream&) {
  const std::uint64_t seed = RequireSeed(o);
  if (o.technique.empty()) throw UsageError("optimize needs --technique");
  if (o.task.empty()) throw UsageError("optimize needs --task");
  if (!o.params.empty()) throw UsageError("optimize does not take --params");
  const Technique& technique = FindTechnique(o.technique);
  const Task task = TaskFlag(o.task);
  const CvOptions cv = MakeCvOptions(o);
  const Corpus corpus = ReadCorpusFile(o.corpus);
  auto context = LoadContext(o);

  const OptimizeResult result = procaug::Optimize(
      technique.id, corpus, task, o.trials, seed, context->view(), cv);
  const TrialRecord& best = result.trials[result.best_trial];
  const json best_json = {{"technique_id", technique.id},
                          {"task", TaskName(task)},
                          {"trial", best.trial_index},
                          {"objective", best.objective},
                          {"config", ConfigToJson(result.best)}};
  WriteFileAtomic(OutPath(o, "trials.csv").string(),
                  TrialsToCsv(technique.id, task, result.trials));
  WriteFileAtomic(OutPath(o, "best_config.json").string(),
                  best_json.dump(2) + "\n");
  WriteManifest(o, {{"technique_id", technique.id}, {"task", TaskName(task)}},
                {{"global", seed}}, {"trials.csv", "best_config.json"});
  out << "best trial " << best.trial_index << " gain "
      << FormatReal(best.objective) << " "
      << ConfigToJson(result.best).dump() << "\n";
  return kExitOk;
}

int Analyze(const Options& o, std::ostream& out, std::ostream&) {
  if (o.augmented.empty()) throw UsageError("analyze needs --augmented");
  const Corpus original = ReadCorpusFile(o.corpus);
  const Corpus augmented = ReadCorpusFile(o.augmented);
  const StatsDelta delta = CompareStats(original, augmented);
  const std::string label = o.technique.empty() ? "unspecified" : o.technique;
  const std::string csv =
      std::string(kStatsCsvHeader) + "\n" + StatsCsvRow(label, delta);
  WriteFileAtomic(OutPath(o, "stats.csv").string(), csv);
  WriteFileAtomic(OutPath(o, "stats.json").string(),
                  StatsDeltaToJson(delta).dump(2) + "\n");
  WriteManifest(o, {{"technique_id", label}}, json::object(),
                {"stats.csv", "stats.json"});
  out << csv;
  return kExitOk;
}

int Dispatch(const Options& o, std::ostream& out, std::ostream& err);

int Replay(const Options& o, std::ostream& out, std::ostream& err) {
  json manifest;
  try {
    manifest = json::parse(ReadFile(o.manifest));
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot read manifest: " + std::string(e.what()));
  }
  if (manifest.value("tool", std::string()) != kTool) {
    throw std::runtime_error(o.manifest + " is not a procaug manifest");
  }
  std::vector<std::string> args =
      manifest.at("args").get<std::vector<std::string>>();
  if (args.empty() || args.front() == "replay") {
    throw std::runtime_error("manifest has no replayable command");
  }
  args.push_back("--out");
  args.push_back(o.out);
  args.push_back("--workers");
  args.push_back(std::to_string(o.workers));
  return Run(args, out, err);
}

int Dispatch(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.command == "augment") return Augment(o, out, err);
  if (o.command == "evaluate") return Evaluate(o, out, err);
  if (o.command == "optimize") return Optimize(o, out, err);
  if (o.command == "analyze") return Analyze(o, out, err);
  return Replay(o, out, err);
}

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--workers", o.workers, "Worker threads (never changes outputs)")
      ->check(CLI::PositiveNumber);
}

void AddAugmentationInputs(CLI::App* cmd, Options& o) {
  cmd->add_option("--corpus", o.corpus, "Corpus JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Global seed");
  cmd->add_option("--provider", o.provider,
                  "Paraphrase provider: stub, identity or an http:// endpoint");
  cmd->add_option("--lexicon", o.lexicon, "Lexicon directory")
      ->check(CLI::ExistingDirectory);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Annotation-preserving data augmentation for process text"};
  app.name(std::string(kTool));
  app.require_subcommand(1);

  CLI::App* augment = app.add_subcommand("augment", "Write an augmented corpus");
  AddAugmentationInputs(augment, o);
  augment->add_option("--technique", o.technique, "Technique id")->required();
  augment->add_option("--params", o.params, "Parameters as key=value");
  AddCommon(augment, o);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Cross-validated gain of one configuration");
  AddAugmentationInputs(evaluate, o);
  evaluate->add_option("--technique", o.technique, "Technique id (optional)");
  evaluate->add_option("--params", o.params, "Parameters as key=value");
  evaluate->add_option("--task", o.task, "md or re (default: both)");
  evaluate->add_option("--folds", o.folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000));
  AddCommon(evaluate, o);

  CLI::App* optimize =
      app.add_subcommand("optimize", "Tune a technique for one task");
  AddAugmentationInputs(optimize, o);
  optimize->add_option("--technique", o.technique, "Technique id")->required();
  optimize->add_option("--task", o.task, "md or re")->required();
  optimize->add_option("--folds", o.folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000));
  optimize->add_option("--trials", o.trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  AddCommon(optimize, o);

  CLI::App* analyze =
      app.add_subcommand("analyze", "Compare corpus statistics");
  analyze->add_option("--corpus", o.corpus, "Original corpus")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--augmented", o.augmented, "Augmented corpus")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--technique", o.technique, "Label for the CSV row");
  AddCommon(analyze, o);

  CLI::App* replay =
      app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", o.manifest, "manifest.json of an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  AddCommon(replay, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) o.command = sub->get_name();

  try {
    return Dispatch(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownTechniqueError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace procaug::cli
