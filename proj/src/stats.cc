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

#include "procaug/stats.h"

#include <map>
#include <optional>
#include <set>

#include "procaug/util.h"

namespace procaug {
namespace {

double Relative(double original, double augmented) {
  return original == 0.0 ? 0.0 : (augmented - original) / original;
}

// True when the relation's head starts before its tail.
std::optional<bool> Forward(const Document& d, const Relation& r) {
  const Mention* head = d.FindMention(r.head);
  const Mention* tail = d.FindMention(r.tail);
  if (!head || !tail) return std::nullopt;
  return head->start < tail->start;
}

}  // namespace

CorpusStats ComputeCorpusStats(const Corpus& corpus) {
  CorpusStats s;
  std::set<std::string> vocabulary;
  std::size_t mention_tokens = 0;
  std::size_t forward = 0;
  for (const Document& d : corpus.documents) {
    ++s.documents;
    s.tokens += d.tokens.size();
    for (const Token& t : d.tokens) vocabulary.insert(ToLower(t.text));
    s.mentions += d.mentions.size();
    for (const Mention& m : d.mentions) mention_tokens += m.length();
    s.relations += d.relations.size();
    for (const Relation& r : d.relations) {
      if (Forward(d, r).value_or(false)) ++forward;
    }
  }
  s.vocabulary_size = vocabulary.size();
  if (s.mentions > 0) {
    s.mean_mention_length =
        static_cast<double>(mention_tokens) / static_cast<double>(s.mentions);
  }
  if (s.relations > 0) {
    s.direction_fraction =
        static_cast<double>(forward) / static_cast<double>(s.relations);
  }
  return s;
}

StatsDelta CompareStats(const Corpus& original, const Corpus& augmented) {
  StatsDelta delta;
  delta.original = ComputeCorpusStats(original);
  delta.augmented = ComputeCorpusStats(augmented);
  const CorpusStats& o = delta.original;
  const CorpusStats& a = delta.augmented;
  delta.vocab_delta = static_cast<double>(a.vocabulary_size) -
                      static_cast<double>(o.vocabulary_size);
  delta.mention_len_delta = a.mean_mention_length - o.mean_mention_length;
  delta.direction_fraction_delta = a.direction_fraction - o.direction_fraction;
  delta.vocab_relative = Relative(static_cast<double>(o.vocabulary_size),
                                  static_cast<double>(a.vocabulary_size));
  delta.mention_len_relative =
      Relative(o.mean_mention_length, a.mean_mention_length);
  delta.direction_fraction_relative =
      Relative(o.direction_fraction, a.direction_fraction);

  std::map<std::string, const Document*> originals;
  for (const Document& d : original.documents) originals.emplace(d.id, &d);
  std::size_t flips = 0;
  for (const Document& d : augmented.documents) {
    auto it = originals.find(ProvenanceId(d.id));
    for (const Relation& r : d.relations) {
      std::optional<bool> before, after = Forward(d, r);
      if (it != originals.end()) {
        for (const Relation& source : it->second->relations) {
          if (source.id == r.id) before = Forward(*it->second, source);
        }
      }
      if (!before || !after) {
        ++delta.unmatched_relations;
        continue;
      }
      ++delta.matched_relations;
      if (*before != *after) ++flips;
    }
  }
  if (delta.matched_relations > 0) {
    delta.direction_flip_rate = static_cast<double>(flips) /
                                static_cast<double>(delta.matched_relations);
  }
  return delta;
}

std::string StatsCsvRow(std::string_view technique_id, const StatsDelta& delta) {
  return CsvField(technique_id) + "," + FormatReal(delta.vocab_delta) + "," +
         FormatReal(delta.mention_len_delta) + "," +
         FormatReal(delta.direction_flip_rate) + "\n";
}

nlohmann::json StatsToJson(const CorpusStats& s) {
  return {{"documents", s.documents},
          {"tokens", s.tokens},
          {"mentions", s.mentions},
          {"relations", s.relations},
          {"vocabulary_size", s.vocabulary_size},
          {"mean_mention_length", s.mean_mention_length},
          {"direction_fraction", s.direction_fraction}};
}

nlohmann::json StatsDeltaToJson(const StatsDelta& d) {
  return {{"original", StatsToJson(d.original)},
          {"augmented", StatsToJson(d.augmented)},
          {"absolute",
           {{"vocab_delta", d.vocab_delta},
            {"mention_len_delta", d.mention_len_delta},
            {"direction_fraction_delta", d.direction_fraction_delta}}},
          {"relative",
           {{"vocab_delta", d.vocab_relative},
            {"mention_len_delta", d.mention_len_relative},
            {"direction_fraction_delta", d.direction_fraction_relative}}},
          {"direction_flip_rate", d.direction_flip_rate},
          {"matched_relations", d.matched_relations},
          {"unmatched_relations", d.unmatched_relations}};
}

}  // namespace procaug
