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

#include "procaug/baselines.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "procaug/util.h"

namespace procaug {
namespace {

using nlohmann::json;

constexpr std::string_view kTaggerFormat = "procaug-tagger";
constexpr std::string_view kRelationFormat = "procaug-relations";
constexpr int kFormatVersion = 1;
constexpr std::string_view kStart = "<s>";
constexpr std::string_view kEnd = "</s>";
constexpr std::string_view kNoRelation = "none";

std::size_t Argmax(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

void CheckHeader(const json& j, std::string_view format) {
  if (j.value("format", std::string()) != format) {
    throw std::invalid_argument("not a " + std::string(format) + " model");
  }
  if (j.value("version", 0) != kFormatVersion) {
    throw std::invalid_argument("unsupported " + std::string(format) +
                                " model version");
  }
}

// Running sums for weight averaging: the averaged weight is
// w - u / c, where u accumulates c * delta at update time c.
class Averager {
 public:
  explicit Averager(WeightTable& table)
      : table_(table), sums_(table.data().size(), 0.0) {}

  void Tick() { ++clock_; }
  void Update(const std::vector<int>& features, std::size_t label,
              double delta) {
    for (int f : features) {
      const std::size_t k = static_cast<std::size_t>(f) * table_.labels() + label;
      table_.data()[k] += delta;
      sums_[k] += static_cast<double>(clock_) * delta;
    }
  }
  void Finish() {
    if (clock_ == 0) return;
    for (std::size_t k = 0; k < sums_.size(); ++k) {
      table_.data()[k] -= sums_[k] / static_cast<double>(clock_);
    }
  }

 private:
  WeightTable& table_;
  std::vector<double> sums_;
  std::uint64_t clock_ = 0;
};

std::string Bucket(long n) {
  const long a = std::labs(n);
  std::string b;
  if (a <= 4) {
    b = std::to_string(a);
  } else if (a <= 8) {
    b = "5-8";
  } else if (a <= 16) {
    b = "9-16";
  } else {
    b = "17+";
  }
  return n < 0 ? "-" + b : b;
}

int SentenceOf(const Document& d, const Mention& m) {
  return d.tokens[m.start].sentence;
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightTable

int WeightTable::Find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int WeightTable::Intern(const std::string& name) {
  auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
  if (inserted) {
    names_.push_back(name);
    weights_.resize(weights_.size() + labels_, 0.0);
  }
  return it->second;
}

void WeightTable::Score(const std::vector<int>& features,
                        std::vector<double>& scores) const {
  scores.assign(labels_, 0.0);
  for (int f : features) {
    if (f < 0) continue;
    const double* row = &weights_[static_cast<std::size_t>(f) * labels_];
    for (std::size_t l = 0; l < labels_; ++l) scores[l] += row[l];
  }
}

json WeightTable::ToJson() const {
  json out = json::object();
  for (std::size_t f = 0; f < names_.size(); ++f) {
    const auto row = weights_.begin() + static_cast<long>(f * labels_);
    if (std::all_of(row, row + static_cast<long>(labels_),
                    [](double w) { return w == 0.0; })) {
      continue;
    }
    out[names_[f]] = std::vector<double>(row, row + static_cast<long>(labels_));
  }
  return out;
}

WeightTable WeightTable::FromJson(const json& j, std::size_t labels) {
  WeightTable table(labels);
  for (const auto& [name, row] : j.items()) {
    const std::vector<double> values = row.get<std::vector<double>>();
    if (values.size() != labels) {
      throw std::invalid_argument("feature '" + name + "' has " +
                                  std::to_string(values.size()) +
                                  " weights, expected " +
                                  std::to_string(labels));
    }
    const int f = table.Intern(name);
    for (std::size_t l = 0; l < labels; ++l) {
      if (!std::isfinite(values[l])) {
        throw std::invalid_argument("non-finite weight for '" + name + "'");
      }
      table.at(f, l) = values[l];
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Tagger

std::vector<std::string> BioTags(const std::vector<std::string>& mention_types) {
  std::vector<std::string> tags = {"O"};
  for (const std::string& t : mention_types) {
    tags.push_back("B-" + t);
    tags.push_back("I-" + t);
  }
  return tags;
}

std::vector<std::string> EncodeBio(const Document& document) {
  std::vector<std::string> tags(document.tokens.size(), "O");
  for (const Mention& m : document.mentions) {
    tags[m.start] = "B-" + m.type;
    for (std::size_t i = m.start + 1; i <= m.end; ++i) tags[i] = "I-" + m.type;
  }
  return tags;
}

std::vector<Mention> DecodeBio(const Document& document,
                               const std::vector<std::string>& tags) {
  std::vector<Mention> out;
  bool open = false;
  auto close = [&open] { open = false; };
  for (std::size_t i = 0; i < tags.size() && i < document.tokens.size(); ++i) {
    if (open && document.tokens[i].sentence !=
                    document.tokens[out.back().start].sentence) {
      close();
    }
    const std::string& tag = tags[i];
    if (tag.size() < 3 || tag[1] != '-') {
      close();
      continue;
    }
    const std::string type = tag.substr(2);
    if (tag[0] == 'I' && open && out.back().type == type) {
      out.back().end = i;
      continue;
    }
    out.push_back({"P" + std::to_string(out.size() + 1), type, i, i});
    open = true;
  }
  return out;
}

std::vector<std::string> TokenFeatures(const Document& document,
                                       std::size_t i) {
  const std::vector<Token>& t = document.tokens;
  const std::string word = ToLower(t[i].text);
  const std::string prev = i > 0 && t[i - 1].sentence == t[i].sentence
                               ? ToLower(t[i - 1].text)
                               : std::string(kStart);
  const std::string next = i + 1 < t.size() && t[i + 1].sentence == t[i].sentence
                               ? ToLower(t[i + 1].text)
                               : std::string(kEnd);
  return {"bias",
          "w=" + word,
          "p3=" + word.substr(0, 3),
          "s3=" + word.substr(word.size() > 3 ? word.size() - 3 : 0),
          std::string("cap=") + (IsCapitalized(t[i].text) ? "1" : "0"),
          "pw=" + prev,
          "nw=" + next};
}

namespace {

std::string PrevTagFeature(std::string_view tag) {
  return "pt=" + std::string(tag);
}

}  // namespace

std::vector<std::string> TaggerModel::PredictTags(
    const Document& document) const {
  std::vector<std::string> out;
  out.reserve(document.tokens.size());
  std::vector<double> scores;
  std::string prev(kStart);
  for (std::size_t i = 0; i < document.tokens.size(); ++i) {
    if (i > 0 && document.tokens[i].sentence != document.tokens[i - 1].sentence) {
      prev = kStart;
    }
    std::vector<int> rows;
    for (const std::string& f : TokenFeatures(document, i)) {
      rows.push_back(weights_.Find(f));
    }
    rows.push_back(weights_.Find(PrevTagFeature(prev)));
    weights_.Score(rows, scores);
    prev = tags_[Argmax(scores)];
    out.push_back(prev);
  }
  return out;
}

json TaggerModel::ToJson() const {
  return {{"format", kTaggerFormat},
          {"version", kFormatVersion},
          {"tags", tags_},
          {"weights", weights_.ToJson()}};
}

TaggerModel TaggerModel::FromJson(const json& j) {
  CheckHeader(j, kTaggerFormat);
  std::vector<std::string> tags = j.at("tags").get<std::vector<std::string>>();
  if (tags.empty() || tags.front() != "O") {
    throw std::invalid_argument("tagger tag set must start with O");
  }
  WeightTable weights = WeightTable::FromJson(j.at("weights"), tags.size());
  return TaggerModel(std::move(tags), std::move(weights));
}

TaggerModel TrainTagger(const Corpus& train, int epochs, std::uint64_t seed) {
  if (train.documents.empty()) {
    throw std::invalid_argument("cannot train a tagger on an empty corpus");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");

  const std::vector<std::string> tags = BioTags(train.mention_types);
  std::map<std::string, std::size_t> tag_index;
  for (std::size_t k = 0; k < tags.size(); ++k) tag_index[tags[k]] = k;

  WeightTable weights(tags.size());
  std::vector<int> prev_rows;  // [0] is the sentence start, then one per tag
  prev_rows.push_back(weights.Intern(PrevTagFeature(kStart)));
  for (const std::string& t : tags) {
    prev_rows.push_back(weights.Intern(PrevTagFeature(t)));
  }

  struct Item {
    std::vector<int> rows;
    std::size_t gold;
    bool sentence_start;
  };
  std::vector<std::vector<Item>> docs;
  for (const Document& d : train.documents) {
    const std::vector<std::string> gold = EncodeBio(d);
    std::vector<Item> items;
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      Item item;
      for (const std::string& f : TokenFeatures(d, i)) {
        item.rows.push_back(weights.Intern(f));
      }
      auto it = tag_index.find(gold[i]);
      if (it == tag_index.end()) {
        throw std::invalid_argument("mention type of '" + gold[i] +
                                    "' is not in the corpus inventory");
      }
      item.gold = it->second;
      item.sentence_start =
          i == 0 || d.tokens[i].sentence != d.tokens[i - 1].sentence;
      items.push_back(std::move(item));
    }
    docs.push_back(std::move(items));
  }

  Averager averager(weights);
  Rng rng(seed);
  std::vector<std::size_t> order(docs.size());
  std::vector<double> scores;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    rng.Shuffle(order);
    for (std::size_t di : order) {
      std::size_t prev = 0;
      for (Item& item : docs[di]) {
        if (item.sentence_start) prev = 0;
        item.rows.push_back(prev_rows[prev]);
        weights.Score(item.rows, scores);
        const std::size_t predicted = Argmax(scores);
        averager.Tick();
        if (predicted != item.gold) {
          averager.Update(item.rows, item.gold, 1.0);
          averager.Update(item.rows, predicted, -1.0);
        }
        item.rows.pop_back();
        prev = predicted + 1;
      }
    }
  }
  averager.Finish();
  return TaggerModel(tags, std::move(weights));
}

std::vector<Mention> PredictMentions(const TaggerModel& model,
                                     const Document& document) {
  return DecodeBio(document, model.PredictTags(document));
}

// ---------------------------------------------------------------------------
// Relations

std::vector<CandidatePair> CandidatePairs(const Document& document,
                                          int window) {
  std::vector<std::size_t> order(document.mentions.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return document.mentions[a].start < document.mentions[b].start;
  });
  std::vector<CandidatePair> out;
  for (std::size_t h : order) {
    for (std::size_t t : order) {
      if (h == t) continue;
      const int gap = std::abs(SentenceOf(document, document.mentions[h]) -
                               SentenceOf(document, document.mentions[t]));
      if (gap <= window) out.push_back({h, t});
    }
  }
  return out;
}

std::vector<std::string> PairFeatures(const Document& document,
                                      const CandidatePair& pair) {
  const Mention& h = document.mentions[pair.head];
  const Mention& t = document.mentions[pair.tail];
  const bool forward = h.start < t.start;
  const long distance = static_cast<long>(t.start) - static_cast<long>(h.start);
  const std::size_t lo = forward ? h.end : t.end;
  const std::size_t hi = forward ? t.start : h.start;
  const long gap = static_cast<long>(hi) - static_cast<long>(lo) - 1;
  long between = 0;
  for (const Mention& m : document.mentions) {
    if (m.start > lo && m.start < hi) ++between;
  }
  const std::string types = h.type + "|" + t.type;
  const std::string order = forward ? "fwd" : "bwd";
  const std::string same =
      SentenceOf(document, h) == SentenceOf(document, t) ? "1" : "0";
  const std::string dist = Bucket(distance);
  const std::string mb = Bucket(between);
  return {"bias",
          "ht=" + h.type,
          "tt=" + t.type,
          "types=" + types,
          "dist=" + dist,
          "same=" + same,
          "order=" + order,
          "gap=" + Bucket(gap),
          "mb=" + mb,
          "types_order=" + types + "|" + order,
          "types_same=" + types + "|" + same,
          "types_dist=" + types + "|" + dist,
          "types_order_mb=" + types + "|" + order + "|" + mb};
}

std::string RelationModel::Classify(const Document& document,
                                    const CandidatePair& pair) const {
  std::vector<int> rows;
  for (const std::string& f : PairFeatures(document, pair)) {
    rows.push_back(weights_.Find(f));
  }
  std::vector<double> scores;
  weights_.Score(rows, scores);
  const std::size_t best = Argmax(scores);
  return best == 0 ? std::string() : classes_[best];
}

json RelationModel::ToJson() const {
  return {{"format", kRelationFormat},
          {"version", kFormatVersion},
          {"window", window_},
          {"classes", classes_},
          {"weights", weights_.ToJson()}};
}

RelationModel RelationModel::FromJson(const json& j) {
  CheckHeader(j, kRelationFormat);
  std::vector<std::string> classes =
      j.at("classes").get<std::vector<std::string>>();
  if (classes.empty() || classes.front() != kNoRelation) {
    throw std::invalid_argument("relation classes must start with none");
  }
  const int window = j.at("window").get<int>();
  WeightTable weights = WeightTable::FromJson(j.at("weights"), classes.size());
  return RelationModel(std::move(classes), window, std::move(weights));
}

RelationModel TrainRelations(const Corpus& train, int epochs,
                             std::uint64_t seed, int window) {
  if (train.documents.empty()) {
    throw std::invalid_argument(
        "cannot train a relation model on an empty corpus");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (window < 0) throw std::invalid_argument("window must be non-negative");

  std::vector<std::string> classes = {std::string(kNoRelation)};
  classes.insert(classes.end(), train.relation_types.begin(),
                 train.relation_types.end());
  std::map<std::string, std::size_t> class_index;
  for (std::size_t k = 1; k < classes.size(); ++k) class_index[classes[k]] = k;

  WeightTable weights(classes.size());
  struct Item {
    std::vector<int> rows;
    std::size_t gold;
  };
  std::vector<Item> items;
  for (const Document& d : train.documents) {
    std::map<std::pair<std::string, std::string>, std::size_t> gold;
    for (const Relation& r : d.relations) {
      auto it = class_index.find(r.type);
      if (it != class_index.end()) gold.emplace(std::pair(r.head, r.tail), it->second);
    }
    for (const CandidatePair& pair : CandidatePairs(d, window)) {
      Item item;
      for (const std::string& f : PairFeatures(d, pair)) {
        item.rows.push_back(weights.Intern(f));
      }
      auto it = gold.find({d.mentions[pair.head].id, d.mentions[pair.tail].id});
      item.gold = it == gold.end() ? 0 : it->second;
      items.push_back(std::move(item));
    }
  }

  Averager averager(weights);
  Rng rng(seed);
  std::vector<std::size_t> order(items.size());
  std::vector<double> scores;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    rng.Shuffle(order);
    for (std::size_t k : order) {
      const Item& item = items[k];
      weights.Score(item.rows, scores);
      const std::size_t predicted = Argmax(scores);
      averager.Tick();
      if (predicted != item.gold) {
        averager.Update(item.rows, item.gold, 1.0);
        averager.Update(item.rows, predicted, -1.0);
      }
    }
  }
  averager.Finish();
  return RelationModel(std::move(classes), window, std::move(weights));
}

std::vector<Relation> PredictRelations(const RelationModel& model,
                                       const Document& document) {
  std::vector<Relation> out;
  for (const CandidatePair& pair : CandidatePairs(document, model.window())) {
    std::string type = model.Classify(document, pair);
    if (type.empty()) continue;
    out.push_back({"R" + std::to_string(out.size() + 1), std::move(type),
                   document.mentions[pair.head].id,
                   document.mentions[pair.tail].id});
  }
  return out;
}

std::vector<Relation> RuleActorBaseline(const Document& document) {
  std::vector<const Mention*> sorted;
  for (const Mention& m : document.mentions) sorted.push_back(&m);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Mention* a, const Mention* b) {
                     return a->start < b->start;
                   });
  std::vector<Relation> out;
  auto emit = [&out](const std::string& type, const Mention& head,
                     const Mention& tail) {
    out.push_back(
        {"A" + std::to_string(out.size() + 1), type, head.id, tail.id});
  };
  for (const Mention* activity : sorted) {
    if (activity->type != "Activity") continue;
    const int sentence = SentenceOf(document, *activity);
    const Mention* left = nullptr;
    const Mention* right = nullptr;
    for (const Mention* m : sorted) {
      if (m->type != "Actor" || SentenceOf(document, *m) != sentence) continue;
      if (m->end < activity->start) left = m;  // keeps the closest one
      if (m->start > activity->end && !right) right = m;
    }
    if (left) emit("Actor Performer", *activity, *left);
    if (right) emit("Actor Recipient", *activity, *right);
  }
  return out;
}

}  // namespace procaug
