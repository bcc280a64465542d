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

// Corpus characteristics that explain how a technique changes the data:
// vocabulary size, mean mention length and relation direction.

#ifndef PROCAUG_STATS_H_
#define PROCAUG_STATS_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"
#include "procaug/corpus.h"

namespace procaug {

struct CorpusStats {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t mentions = 0;
  std::size_t relations = 0;
  std::size_t vocabulary_size = 0;   // distinct lowercased token texts
  double mean_mention_length = 0.0;  // 0 without mentions
  // Share of relations whose head starts before its tail; 0 without
  // relations.
  double direction_fraction = 0.0;
};

CorpusStats ComputeCorpusStats(const Corpus& corpus);

struct StatsDelta {
  CorpusStats original;
  CorpusStats augmented;
  // augmented - original
  double vocab_delta = 0.0;
  double mention_len_delta = 0.0;
  double direction_fraction_delta = 0.0;
  // (augmented - original) / original; 0 when the original value is 0
  double vocab_relative = 0.0;
  double mention_len_relative = 0.0;
  double direction_fraction_relative = 0.0;
  // Among augmented relations traced to an original relation (document
  // provenance id plus relation id), the share whose head/tail order differs.
  double direction_flip_rate = 0.0;
  std::size_t matched_relations = 0;
  std::size_t unmatched_relations = 0;  // excluded from the flip rate
};

StatsDelta CompareStats(const Corpus& original, const Corpus& augmented);

inline constexpr std::string_view kStatsCsvHeader =
    "technique_id,vocab_delta,mention_len_delta,direction_flip_rate";

// One CSV row (no header) in kStatsCsvHeader order.
std::string StatsCsvRow(std::string_view technique_id, const StatsDelta& delta);
nlohmann::json StatsToJson(const CorpusStats& stats);
nlohmann::json StatsDeltaToJson(const StatsDelta& delta);

}  // namespace procaug

#endif  // PROCAUG_STATS_H_
