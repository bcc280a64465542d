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

#include "procaug/eval.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "procaug/util.h"

namespace procaug {
namespace {

using nlohmann::json;

// Greedy one-to-one matching of equal keys, in prediction order.
template <typename Key>
Score MatchKeys(const std::vector<Key>& gold, const std::vector<Key>& predicted) {
  std::vector<bool> used(gold.size(), false);
  std::size_t tp = 0;
  for (const Key& p : predicted) {
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (!used[g] && gold[g] == p) {
        used[g] = true;
        ++tp;
        break;
      }
    }
  }
  return Score::FromCounts(tp, predicted.size() - tp, gold.size() - tp);
}

MentionKey KeyOf(const Mention& m) { return {m.type, m.start, m.end}; }

bool Wants(const CvOptions& options, Task task) {
  return std::find(options.tasks.begin(), options.tasks.end(), task) !=
         options.tasks.end();
}

// Trains the requested models on `train` and scores them on `test`.
ArmScores TrainAndScore(const Corpus& train, const Corpus& test,
                        std::uint64_t seed, const CvOptions& options) {
  ArmScores scores;
  if (Wants(options, Task::kMentions)) {
    const TaggerModel tagger =
        TrainTagger(train, options.epochs, DeriveSeed(seed, {"tagger"}));
    Score total;
    for (const Document& d : test.documents) {
      total += ScoreMentions(d.mentions, PredictMentions(tagger, d));
    }
    scores.mentions = total;
  }
  if (Wants(options, Task::kRelations)) {
    const RelationModel model = TrainRelations(
        train, options.epochs, DeriveSeed(seed, {"relations"}), options.window);
    Score total;
    for (const Document& d : test.documents) {
      total += ScoreRelations(
          ResolveRelations(d.mentions, d.relations),
          ResolveRelations(d.mentions, PredictRelations(model, d)));
    }
    scores.relations = total;
  }
  return scores;
}

struct FoldSplit {
  Corpus train;
  Corpus test;
};

FoldSplit Split(const Corpus& corpus,
                const std::vector<std::vector<std::size_t>>& folds, int f) {
  std::vector<bool> in_test(corpus.documents.size(), false);
  for (std::size_t i : folds[static_cast<std::size_t>(f)]) in_test[i] = true;
  FoldSplit split;
  split.train.mention_types = split.test.mention_types = corpus.mention_types;
  split.train.relation_types = split.test.relation_types = corpus.relation_types;
  split.train.documents.clear();
  split.test.documents.clear();
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    (in_test[i] ? split.test : split.train).documents.push_back(corpus.documents[i]);
  }
  return split;
}

std::uint64_t TrainingSeed(std::uint64_t seed, int fold) {
  return DeriveSeed(seed, {"train"}, static_cast<std::uint64_t>(fold));
}

std::vector<std::string> Ids(const Corpus& corpus) {
  std::vector<std::string> ids;
  for (const Document& d : corpus.documents) ids.push_back(d.id);
  return ids;
}

json ScoreJson(const Score& s) {
  return {{"true_positives", s.true_positives},
          {"false_positives", s.false_positives},
          {"false_negatives", s.false_negatives},
          {"precision", s.precision},
          {"recall", s.recall},
          {"f1", s.f1}};
}

json ArmJson(const ArmScores& arm) {
  json j = json::object();
  if (arm.mentions) j["md"] = ScoreJson(*arm.mentions);
  if (arm.relations) j["re"] = ScoreJson(*arm.relations);
  return j;
}

const std::optional<Score>& ScoreFor(const ArmScores& arm, Task task) {
  return task == Task::kMentions ? arm.mentions : arm.relations;
}

}  // namespace

Score Score::FromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Score s;
  s.true_positives = tp;
  s.false_positives = fp;
  s.false_negatives = fn;
  s.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  s.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
  s.f1 = s.precision + s.recall == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

Score& Score::operator+=(const Score& other) {
  *this = FromCounts(true_positives + other.true_positives,
                     false_positives + other.false_positives,
                     false_negatives + other.false_negatives);
  return *this;
}

Score ScoreMentions(const std::vector<Mention>& gold,
                    const std::vector<Mention>& predicted) {
  std::vector<MentionKey> g, p;
  for (const Mention& m : gold) g.push_back(KeyOf(m));
  for (const Mention& m : predicted) p.push_back(KeyOf(m));
  return MatchKeys(g, p);
}

std::vector<ResolvedRelation> ResolveRelations(
    const std::vector<Mention>& mentions,
    const std::vector<Relation>& relations) {
  std::map<std::string, MentionKey> by_id;
  for (const Mention& m : mentions) by_id.emplace(m.id, KeyOf(m));
  std::vector<ResolvedRelation> out;
  for (const Relation& r : relations) {
    auto head = by_id.find(r.head);
    auto tail = by_id.find(r.tail);
    if (head == by_id.end() || tail == by_id.end()) {
      throw std::invalid_argument("relation " + r.id +
                                  " has a dangling endpoint");
    }
    out.push_back({r.type, head->second, tail->second});
  }
  return out;
}

Score ScoreRelations(const std::vector<ResolvedRelation>& gold,
                     const std::vector<ResolvedRelation>& predicted) {
  return MatchKeys(gold, predicted);
}

std::string_view TaskName(Task task) {
  return task == Task::kMentions ? "md" : "re";
}

Task ParseTask(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "md") return Task::kMentions;
  if (lower == "re") return Task::kRelations;
  throw std::invalid_argument("unknown task '" + std::string(name) +
                              "' (expected md or re)");
}

std::vector<std::vector<std::size_t>> AssignFolds(std::size_t n, int k,
                                                  std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("at least 2 folds are required");
  if (static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument(std::to_string(k) + " folds need at least " +
                                std::to_string(k) + " documents, got " +
                                std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(DeriveSeed(seed, {"folds"}));
  rng.Shuffle(order);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);
  std::size_t next = 0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<long>(next),
                    order.begin() + static_cast<long>(next + size));
    std::sort(folds[f].begin(), folds[f].end());
    next += size;
  }
  return folds;
}

const TaskGain& GainReport::ForTask(Task task) const {
  for (const TaskGain& g : tasks) {
    if (g.task == task) return g;
  }
  throw std::invalid_argument("report has no " + std::string(TaskName(task)) +
                              " result");
}

json GainReport::ToJson() const {
  json j;
  j["technique_id"] = technique_id;
  j["config"] = config ? ConfigToJson(*config) : json(nullptr);
  j["seed"] = seed;
  j["folds"] = folds;
  j["tasks"] = json::array();
  for (const TaskGain& g : tasks) {
    j["tasks"].push_back({{"task", TaskName(g.task)},
                          {"baseline_f1", g.baseline_f1},
                          {"augmented_f1", g.augmented_f1},
                          {"gain", g.gain}});
  }
  j["per_fold"] = json::array();
  for (const FoldResult& f : per_fold) {
    j["per_fold"].push_back({{"fold", f.fold},
                             {"test_ids", f.test_ids},
                             {"train_ids", f.train_ids},
                             {"synthetic_ids", f.synthetic_ids},
                             {"baseline", ArmJson(f.baseline)},
                             {"augmented", ArmJson(f.augmented)}});
  }
  j["warnings"] = warnings;
  return j;
}

std::string GainReport::ToCsv() const {
  std::string out = std::string(kGainCsvHeader) + "\n";
  for (const TaskGain& g : tasks) {
    out += CsvField(technique_id) + "," + std::string(TaskName(g.task)) + "," +
           FormatReal(g.baseline_f1) + "," + FormatReal(g.augmented_f1) + "," +
           FormatReal(g.gain) + "\n";
  }
  return out;
}

BaselineCache ComputeBaseline(const Corpus& corpus, std::uint64_t seed,
                              const CvOptions& options) {
  const auto folds = AssignFolds(corpus.documents.size(), options.folds, seed);
  BaselineCache cache;
  cache.seed = seed;
  cache.folds.resize(folds.size());
  ParallelFor(folds.size(), options.workers, [&](std::size_t f) {
    const FoldSplit split = Split(corpus, folds, static_cast<int>(f));
    cache.folds[f] = TrainAndScore(split.train, split.test,
                                   TrainingSeed(seed, static_cast<int>(f)),
                                   options);
  });
  return cache;
}

GainReport CrossValidate(const Corpus& corpus,
                         const std::optional<TechniqueConfig>& technique,
                         const AugmentContext& context, std::uint64_t seed,
                         const CvOptions& options,
                         const BaselineCache* baseline) {
  const auto folds = AssignFolds(corpus.documents.size(), options.folds, seed);
  if (baseline && (baseline->seed != seed || baseline->folds.size() != folds.size())) {
    throw std::invalid_argument("baseline cache does not match this run");
  }
  std::optional<TechniqueConfig> resolved;
  if (technique) resolved = ResolveConfig(*technique);

  GainReport report;
  report.technique_id = resolved ? resolved->technique_id : "none";
  report.config = resolved;
  report.seed = seed;
  report.folds = options.folds;
  report.per_fold.resize(folds.size());
  std::vector<std::vector<std::string>> fold_warnings(folds.size());

  ParallelFor(folds.size(), options.workers, [&](std::size_t f) {
    const int fold = static_cast<int>(f);
    const FoldSplit split = Split(corpus, folds, fold);
    const std::uint64_t train_seed = TrainingSeed(seed, fold);
    FoldResult& result = report.per_fold[f];
    result.fold = fold;
    result.test_ids = Ids(split.test);
    result.train_ids = Ids(split.train);
    result.baseline = baseline ? baseline->folds[f]
                               : TrainAndScore(split.train, split.test,
                                               train_seed, options);
    if (!resolved) {
      result.augmented = result.baseline;
      return;
    }
    AugmentContext fold_context = context;
    fold_context.donor = &split.train;
    CorpusAugmentation augmentation = AugmentCorpus(
        split.train, *resolved, fold_context,
        DeriveSeed(seed, {"augment"}, static_cast<std::uint64_t>(fold)), 1);
    result.synthetic_ids = Ids(augmentation.synthetic);
    for (const std::string& w : augmentation.warnings) {
      fold_warnings[f].push_back("fold " + std::to_string(fold) + ": " + w);
    }
    result.augmented =
        TrainAndScore(MergeCorpora(split.train, augmentation.synthetic),
                      split.test, train_seed, options);
  });

  for (auto& w : fold_warnings) {
    report.warnings.insert(report.warnings.end(), w.begin(), w.end());
  }
  for (Task task : options.tasks) {
    TaskGain gain;
    gain.task = task;
    for (const FoldResult& f : report.per_fold) {
      gain.baseline_f1 += ScoreFor(f.baseline, task).value().f1;
      gain.augmented_f1 += ScoreFor(f.augmented, task).value().f1;
    }
    gain.baseline_f1 /= static_cast<double>(folds.size());
    gain.augmented_f1 /= static_cast<double>(folds.size());
    gain.gain = gain.augmented_f1 - gain.baseline_f1;
    report.tasks.push_back(gain);
  }
  return report;
}

}  // namespace procaug
