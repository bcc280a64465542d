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

// Micro-averaged scoring for mention detection and relation extraction, and
// the k-fold experiment comparing models trained with and without augmented
// training folds.

#ifndef PROCAUG_EVAL_H_
#define PROCAUG_EVAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "procaug/augmenters.h"
#include "procaug/baselines.h"
#include "procaug/corpus.h"

namespace procaug {

struct Score {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Ratios are 0 whenever their denominator is.
  static Score FromCounts(std::size_t tp, std::size_t fp, std::size_t fn);
  // Micro aggregation: counts are summed, ratios recomputed.
  Score& operator+=(const Score& other);
};

// Exact (type, start, end) matching within one document.
Score ScoreMentions(const std::vector<Mention>& gold,
                    const std::vector<Mention>& predicted);

struct MentionKey {
  std::string type;
  std::size_t start = 0;
  std::size_t end = 0;
  auto operator<=>(const MentionKey&) const = default;
};

struct ResolvedRelation {
  std::string type;
  MentionKey head;
  MentionKey tail;
  auto operator<=>(const ResolvedRelation&) const = default;
};

// Replaces endpoint ids with the mentions' (type, start, end). Throws
// std::invalid_argument on an endpoint missing from `mentions`.
std::vector<ResolvedRelation> ResolveRelations(
    const std::vector<Mention>& mentions,
    const std::vector<Relation>& relations);

// Exact (type, head, tail) matching; direction matters.
Score ScoreRelations(const std::vector<ResolvedRelation>& gold,
                     const std::vector<ResolvedRelation>& predicted);

enum class Task { kMentions, kRelations };

std::string_view TaskName(Task task);  // "md" or "re"
// Accepts "md" and "re" in any case; throws std::invalid_argument otherwise.
Task ParseTask(std::string_view name);

// Seeded shuffle of 0..n-1 cut into k contiguous folds whose sizes differ by
// at most one. Throws std::invalid_argument unless 2 <= k <= n.
std::vector<std::vector<std::size_t>> AssignFolds(std::size_t n, int k,
                                                  std::uint64_t seed);

struct CvOptions {
  int folds = 5;
  int epochs = 5;
  int window = kDefaultSentenceWindow;
  int workers = 1;
  std::vector<Task> tasks = {Task::kMentions, Task::kRelations};
};

struct ArmScores {
  std::optional<Score> mentions;
  std::optional<Score> relations;
};

struct FoldResult {
  int fold = 0;
  std::vector<std::string> test_ids;
  std::vector<std::string> train_ids;
  std::vector<std::string> synthetic_ids;
  ArmScores baseline;
  ArmScores augmented;
};

struct TaskGain {
  Task task = Task::kMentions;
  double baseline_f1 = 0.0;   // mean of per-fold F1
  double augmented_f1 = 0.0;
  double gain = 0.0;          // augmented_f1 - baseline_f1
};

struct GainReport {
  std::string technique_id;  // "none" without a technique
  std::optional<TechniqueConfig> config;
  std::uint64_t seed = 0;
  int folds = 0;
  std::vector<TaskGain> tasks;
  std::vector<FoldResult> per_fold;
  std::vector<std::string> warnings;

  const TaskGain& ForTask(Task task) const;
  nlohmann::json ToJson() const;
  // Header plus one row per task.
  std::string ToCsv() const;
};

inline constexpr std::string_view kGainCsvHeader =
    "technique_id,task,baseline_f1,augmented_f1,gain";

// Per-fold scores of the unaugmented arm. Depends only on (corpus, seed,
// options), so it can be reused across configurations.
struct BaselineCache {
  std::uint64_t seed = 0;
  std::vector<ArmScores> folds;
};

BaselineCache ComputeBaseline(const Corpus& corpus, std::uint64_t seed,
                              const CvOptions& options);

// Runs both arms over the same folds and training seeds. The augmented arm
// trains on each training fold plus the technique's synthetic documents,
// generated from (and with donors drawn from) that training fold only; test
// folds are never augmented. Without a technique both arms are identical.
// Throws std::invalid_argument when folds < 2 or folds > document count.
GainReport CrossValidate(const Corpus& corpus,
                         const std::optional<TechniqueConfig>& technique,
                         const AugmentContext& context, std::uint64_t seed,
                         const CvOptions& options = {},
                         const BaselineCache* baseline = nullptr);

}  // namespace procaug

#endif  // PROCAUG_EVAL_H_
