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

// Downstream extractors used to measure augmentation gains: an averaged
// perceptron BIO tagger for mention detection, a multiclass averaged
// perceptron over mention pairs for relation extraction, and the positional
// actor rule.
//
// Both models serialize to versioned JSON:
//
//   tagger:    {"format":"procaug-tagger","version":1,"tags":[...],
//               "weights":{feature:[one weight per tag], ...}}
//   relations: {"format":"procaug-relations","version":1,"window":1,
//               "classes":["none", relation types...],
//               "weights":{feature:[one weight per class], ...}}
//
// Only averaged weights are stored; features whose weights are all zero are
// omitted.

#ifndef PROCAUG_BASELINES_H_
#define PROCAUG_BASELINES_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "procaug/corpus.h"

namespace procaug {

// Shared storage for both perceptrons: a feature-by-label weight matrix.
class WeightTable {
 public:
  WeightTable() = default;
  explicit WeightTable(std::size_t labels) : labels_(labels) {}

  std::size_t labels() const { return labels_; }
  std::size_t features() const { return names_.size(); }
  // Row of `name`, or -1 when unseen.
  int Find(const std::string& name) const;
  int Intern(const std::string& name);
  double& at(int feature, std::size_t label) {
    return weights_[static_cast<std::size_t>(feature) * labels_ + label];
  }
  double at(int feature, std::size_t label) const {
    return weights_[static_cast<std::size_t>(feature) * labels_ + label];
  }
  // Sums the rows of `features` into one score per label. Rows < 0 are
  // skipped.
  void Score(const std::vector<int>& features, std::vector<double>& scores) const;
  std::vector<double>& data() { return weights_; }
  const std::vector<double>& data() const { return weights_; }

  nlohmann::json ToJson() const;
  static WeightTable FromJson(const nlohmann::json& j, std::size_t labels);

 private:
  std::size_t labels_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> weights_;
};

// Tag inventory for a mention-type list: O, then B-t and I-t per type.
std::vector<std::string> BioTags(const std::vector<std::string>& mention_types);
// Gold BIO tags of a document.
std::vector<std::string> EncodeBio(const Document& document);
// Turns per-token tags into mentions, one sentence at a time. An I-t that
// does not continue a B-t or I-t opens a new mention. Ids are "P1", "P2"...
std::vector<Mention> DecodeBio(const Document& document,
                               const std::vector<std::string>& tags);

class TaggerModel {
 public:
  TaggerModel() = default;
  TaggerModel(std::vector<std::string> tags, WeightTable weights)
      : tags_(std::move(tags)), weights_(std::move(weights)) {}

  const std::vector<std::string>& tags() const { return tags_; }
  const WeightTable& weights() const { return weights_; }

  // Greedy left-to-right tagging; ties go to the lower tag index.
  std::vector<std::string> PredictTags(const Document& document) const;

  nlohmann::json ToJson() const;
  static TaggerModel FromJson(const nlohmann::json& j);

 private:
  std::vector<std::string> tags_;
  WeightTable weights_;
};

// Observation features of token `i` (everything but the previous tag).
std::vector<std::string> TokenFeatures(const Document& document, std::size_t i);

// Throws std::invalid_argument on an empty corpus or epochs < 1. Documents
// are visited in a seeded shuffled order each epoch.
TaggerModel TrainTagger(const Corpus& train, int epochs, std::uint64_t seed);
std::vector<Mention> PredictMentions(const TaggerModel& model,
                                     const Document& document);

struct CandidatePair {
  std::size_t head = 0;  // indices into document.mentions
  std::size_t tail = 0;
};

// Ordered pairs of distinct mentions at most `window` sentences apart,
// sorted by (head start, tail start).
std::vector<CandidatePair> CandidatePairs(const Document& document, int window);
std::vector<std::string> PairFeatures(const Document& document,
                                      const CandidatePair& pair);

class RelationModel {
 public:
  RelationModel() = default;
  RelationModel(std::vector<std::string> classes, int window,
                WeightTable weights)
      : classes_(std::move(classes)),
        window_(window),
        weights_(std::move(weights)) {}

  // classes()[0] is "none".
  const std::vector<std::string>& classes() const { return classes_; }
  int window() const { return window_; }
  const WeightTable& weights() const { return weights_; }

  // Relation type of the pair, or "" for none. Ties go to the lower class.
  std::string Classify(const Document& document,
                       const CandidatePair& pair) const;

  nlohmann::json ToJson() const;
  static RelationModel FromJson(const nlohmann::json& j);

 private:
  std::vector<std::string> classes_;
  int window_ = 1;
  WeightTable weights_;
};

inline constexpr int kDefaultSentenceWindow = 1;

// Trains on gold mentions. Throws std::invalid_argument on an empty corpus,
// epochs < 1 or a negative window.
RelationModel TrainRelations(const Corpus& train, int epochs,
                             std::uint64_t seed,
                             int window = kDefaultSentenceWindow);
// Predicts over the document's own mentions. Ids are "R1", "R2"...
std::vector<Relation> PredictRelations(const RelationModel& model,
                                       const Document& document);

// For each Activity, the nearest Actor to its left in the same sentence
// becomes its Actor Performer and the nearest Actor to its right its Actor
// Recipient (Activity is the head). Both sides are reported even when the
// two Actors are equally far away; the left one is listed first.
std::vector<Relation> RuleActorBaseline(const Document& document);

}  // namespace procaug

#endif  // PROCAUG_BASELINES_H_
