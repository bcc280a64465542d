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

// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers as arguments to
// run a subset.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "procaug/augmenters.h"
#include "procaug/baselines.h"
#include "procaug/corpus.h"
#include "procaug/eval.h"
#include "procaug/hyperopt.h"
#include "procaug/provider.h"
#include "procaug/stats.h"
#include "procaug/util.h"
#include "test_support.h"

namespace procaug::testing {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

const char* kTwenty = "twenty_documents.json";

int Workers() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

TechniqueConfig RandomConfig(const std::string& id, std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, {id, "config"}));
  return ConfigFromPoint(id, SamplePrior(FindTechnique(id).space, rng));
}

std::map<std::string, const Document*> ById(const Corpus& corpus) {
  std::map<std::string, const Document*> out;
  for (const Document& d : corpus.documents) out.emplace(d.id, &d);
  return out;
}

// 1. Every output validates and conserves mentions and relations.
Outcome AnnotationPreservation() {
  const Corpus corpus = LoadFixture(kTwenty);
  const auto originals = ById(corpus);
  StubProvider provider(BundledLexicon());
  AugmentContext ctx{&BundledLexicon(), &provider, &corpus};
  std::size_t outputs = 0;
  for (const std::string& op : OperationNames()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      TechniqueConfig config = RandomConfig(op, seed);
      CorpusAugmentation result;
      try {
        result = AugmentCorpus(corpus, config, ctx, seed);
      } catch (const std::exception& e) {
        return {false, fmt::format("{} seed {}: {}", op, seed, e.what())};
      }
      for (const Document& d : result.synthetic.documents) {
        ++outputs;
        const Document& source = *originals.at(ProvenanceId(d.id));
        auto violations = ValidateDocument(d);
        if (!violations.empty()) {
          return {false, fmt::format("{} seed {} {}: {} ({})", op, seed, d.id,
                                     violations[0].rule,
                                     violations[0].message)};
        }
        if (d.mentions.size() != source.mentions.size() ||
            RelationMultiset(d) != RelationMultiset(source)) {
          return {false, fmt::format("{} seed {} {}: annotations changed", op,
                                     seed, d.id)};
        }
      }
    }
  }
  return {true, fmt::format("{} operations x 200 seeds, {} documents checked",
                            OperationNames().size(), outputs)};
}

// 2. Identity configurations reproduce their input exactly.
Outcome IdentityConfigurations() {
  Corpus corpus = LoadFixture(kTwenty);
  corpus.documents.push_back(D1());
  const auto originals = ById(corpus);
  StubProvider stub(BundledLexicon());
  IdentityProvider identity;
  std::size_t checked = 0;
  for (const Technique& t : Techniques()) {
    bool paraphrase = t.operation == ops::kParaphraseSpans;
    AugmentContext ctx{&BundledLexicon(),
                       paraphrase ? static_cast<ParaphraseProvider*>(&identity)
                                  : &stub,
                       &corpus};
    TechniqueConfig config = IdentityConfig(t.id);
    config.n_aug = 2;
    CorpusAugmentation result = AugmentCorpus(corpus, config, ctx, 11);
    if (result.synthetic.documents.size() != 2 * corpus.documents.size()) {
      return {false, t.id + ": wrong replica count"};
    }
    for (Document d : result.synthetic.documents) {
      d.id = ProvenanceId(d.id);
      const Document& source = *originals.at(d.id);
      if (SerializeCorpus(CorpusOf({d})) != SerializeCorpus(CorpusOf({source}))) {
        return {false, fmt::format("{} changed {}", t.id, d.id)};
      }
      ++checked;
    }
  }
  return {true, fmt::format("{} techniques, {} documents byte-identical",
                            Techniques().size(), checked)};
}

// 3. CLI outputs are byte-identical across reruns and worker counts.
Outcome Determinism() {
  const std::string corpus = FixturePath(kTwenty);
  const std::vector<std::vector<std::string>> commands = {
      {"augment", "--corpus", corpus, "--technique", "B.101", "--params",
       "p=0.4", "n_aug=3", "--seed", "5"},
      {"augment", "--corpus", corpus, "--technique", "B.8", "--seed", "5"},
      {"evaluate", "--corpus", corpus, "--technique", "B.79", "--params",
       "p=0.2", "--seed", "9"},
      {"optimize", "--corpus", corpus, "--technique", "B.100", "--task", "md",
       "--seed", "13"}};
  for (const auto& base : commands) {
    std::map<std::string, std::string> reference;
    for (const char* workers : {"1", "8", "1", "8"}) {
      std::string dir = TempDir("determinism");
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--out", dir, "--workers", workers});
      CliResult r = RunCli(args);
      if (r.code != 0) {
        return {false, base[0] + " exited " + std::to_string(r.code) + ": " +
                           r.err};
      }
      auto files = ReadDirectory(dir);
      if (reference.empty()) {
        reference = files;
      } else if (files != reference) {
        return {false, base[0] + " output differs at workers=" + workers};
      }
    }
  }
  return {true, fmt::format("{} commands x 4 runs identical", commands.size())};
}

// 4. Greedy scorers agree with exhaustive matching.
Outcome ScoringOracle() {
  Rng rng(2024);
  auto key_text = [](const MentionKey& k) {
    return k.type + "|" + std::to_string(k.start) + "|" +
           std::to_string(k.end);
  };
  auto same = [](const Score& a, const Score& b) {
    return a.true_positives == b.true_positives &&
           a.false_positives == b.false_positives &&
           a.false_negatives == b.false_negatives &&
           a.precision == b.precision && a.recall == b.recall && a.f1 == b.f1;
  };
  const std::vector<std::string> types = {"Actor", "Activity"};
  auto random_mention = [&](int i) {
    std::size_t start = rng.Index(3);
    return Mention{"X" + std::to_string(i), types[rng.Index(2)], start,
                   start + rng.Index(2)};
  };
  for (int instance = 0; instance < 1000; ++instance) {
    std::vector<Mention> gold, pred;
    std::size_t ng = rng.Index(11), np = rng.Index(11);
    for (std::size_t i = 0; i < ng; ++i) gold.push_back(random_mention(i));
    for (std::size_t i = 0; i < np; ++i) pred.push_back(random_mention(i));
    std::vector<std::string> gk, pk;
    for (const Mention& m : gold) gk.push_back(key_text({m.type, m.start, m.end}));
    for (const Mention& m : pred) pk.push_back(key_text({m.type, m.start, m.end}));
    if (!same(ScoreMentions(gold, pred), BruteForceScore(gk, pk))) {
      return {false, fmt::format("mention instance {} disagrees", instance)};
    }

    std::vector<ResolvedRelation> rg, rp;
    std::vector<std::string> rgk, rpk;
    auto random_relation = [&]() {
      ResolvedRelation r;
      r.type = rng.Bernoulli(0.5) ? "Flow" : "Uses";
      Mention h = random_mention(0), t = random_mention(1);
      r.head = {h.type, h.start, h.end};
      r.tail = {t.type, t.start, t.end};
      return r;
    };
    auto relation_text = [&](const ResolvedRelation& r) {
      return r.type + ">" + key_text(r.head) + ">" + key_text(r.tail);
    };
    ng = rng.Index(11);
    np = rng.Index(11);
    for (std::size_t i = 0; i < ng; ++i) rg.push_back(random_relation());
    for (std::size_t i = 0; i < np; ++i) {
      // Half the predictions copy a gold item so that matches are common.
      if (!rg.empty() && rng.Bernoulli(0.5)) {
        rp.push_back(rg[rng.Index(rg.size())]);
      } else {
        rp.push_back(random_relation());
      }
    }
    for (const auto& r : rg) rgk.push_back(relation_text(r));
    for (const auto& r : rp) rpk.push_back(relation_text(r));
    if (!same(ScoreRelations(rg, rp), BruteForceScore(rgk, rpk))) {
      return {false, fmt::format("relation instance {} disagrees", instance)};
    }
  }
  return {true, "1000 mention and 1000 relation instances agree"};
}

// 5. Only sentence reordering and concatenation may flip directions.
Outcome DirectionProperty() {
  const Corpus corpus = LoadFixture(kTwenty);
  StubProvider provider(BundledLexicon());
  AugmentContext ctx{&BundledLexicon(), &provider, &corpus};
  std::size_t techniques = 0;
  for (const Technique& t : Techniques()) {
    if (t.operation == ops::kSentenceReordering ||
        t.operation == ops::kSentenceConcatenation) {
      continue;
    }
    ++techniques;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto result = AugmentCorpus(corpus, RandomConfig(t.id, seed), ctx, seed);
      StatsDelta delta = CompareStats(corpus, result.synthetic);
      if (delta.direction_flip_rate != 0.0 || delta.unmatched_relations != 0) {
        return {false, fmt::format("{} seed {} flip rate {}", t.id, seed,
                                   delta.direction_flip_rate)};
      }
    }
  }
  TechniqueConfig reorder = DefaultConfig("B.88");
  reorder.params["p"] = 1.0;
  reorder.params["max_displacement"] = std::int64_t{0};
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto result = AugmentCorpus(corpus, reorder, ctx, seed);
    if (CompareStats(corpus, result.synthetic).direction_flip_rate > 0.0) {
      ++positive;
    }
  }
  return {positive >= 95,
          fmt::format("{} techniques never flip; B.88 flips in {}/100 runs",
                      techniques, positive)};
}

// 6. TPE beats uniform random search on a smooth one-dimensional objective.
Outcome TpeSanity() {
  ParamSpace space({ParamSpec::Float("x", 0.0, 1.0, 0.5)});
  auto objective = [](const ParamMap& p) {
    double x = GetFloat(p, "x");
    return -(x - 0.3) * (x - 0.3);
  };
  TpeOptions random_search;
  random_search.n_startup = 25;
  int wins = 0;
  double tpe_error = 0.0, random_error = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto tpe = Maximize(space, objective, 25, seed);
    auto rnd = Maximize(space, objective, 25, seed, random_search);
    const TrialRecord& a = tpe[BestTrial(tpe)];
    const TrialRecord& b = rnd[BestTrial(rnd)];
    if (a.objective > b.objective) ++wins;
    tpe_error += std::abs(GetFloat(a.point, "x") - 0.3) / 100.0;
    random_error += std::abs(GetFloat(b.point, "x") - 0.3) / 100.0;
  }
  return {wins >= 70 && tpe_error < random_error,
          fmt::format("TPE wins {}/100; mean |x-0.3| TPE {:.5f} vs random "
                      "{:.5f}",
                      wins, tpe_error, random_error)};
}

// 7. Tuned synonym substitution improves mention detection.
Outcome EndToEndGain() {
  const Lexicon& lexicon = BundledLexicon();
  CvOptions cv;
  cv.workers = Workers();
  cv.tasks = {Task::kMentions};
  double total = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Corpus corpus = SynonymClassCorpus(DeriveSeed(seed, {"corpus"}), 40,
                                       lexicon);
    AugmentContext ctx{&lexicon, nullptr, nullptr};
    OptimizeResult tuned =
        Optimize("B.101", corpus, Task::kMentions, 25, seed, ctx, cv);
    // Fresh folds so the reported gain is not the tuning objective itself.
    GainReport report = CrossValidate(
        corpus, tuned.best, ctx, DeriveSeed(seed, {"held-out"}), cv);
    double gain = report.ForTask(Task::kMentions).gain;
    total += gain;
    per_seed += fmt::format(" {:+.4f}", gain);
  }
  double mean = total / 10.0;
  return {mean > 0.0,
          fmt::format("mean MD gain {:+.4f}; per seed:{}", mean, per_seed)};
}

// 8. Corpus statistics react as expected to two techniques.
Outcome StatsInvariants() {
  const Corpus corpus = LoadFixture(kTwenty);
  AugmentContext ctx{&BundledLexicon(), nullptr, &corpus};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto result = AugmentCorpus(
        corpus, RandomConfig(std::string(ops::kShuffleWithinSegments), seed),
        ctx, seed);
    StatsDelta delta = CompareStats(corpus, result.synthetic);
    if (delta.vocab_delta != 0.0 || delta.mention_len_delta != 0.0) {
      return {false, fmt::format("shuffle seed {} changed vocab by {} and "
                                 "mention length by {}",
                                 seed, delta.vocab_delta,
                                 delta.mention_len_delta)};
    }
  }
  TechniqueConfig filler = DefaultConfig(ops::kFillerWordInsertion);
  filler.params["p"] = 0.3;
  filler.params["in_mentions"] = std::string("true");
  int longer = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto result = AugmentCorpus(corpus, filler, ctx, seed);
    if (CompareStats(corpus, result.synthetic).mention_len_delta > 0.0) {
      ++longer;
    }
  }
  return {longer >= 95,
          fmt::format("shuffle keeps vocabulary and mention length in 100/100;"
                      " filler lengthens mentions in {}/100",
                      longer)};
}

// 9. Both perceptrons fit separable training data within five epochs.
Outcome BaselineSeparability() {
  const Corpus tagged = SeparableTaggerCorpus();
  TaggerModel tagger = TrainTagger(tagged, 5, 1);
  std::size_t tokens = 0, correct = 0;
  for (const Document& d : tagged.documents) {
    auto gold = EncodeBio(d);
    auto pred = tagger.PredictTags(d);
    for (std::size_t i = 0; i < gold.size(); ++i) {
      ++tokens;
      if (gold[i] == pred[i]) ++correct;
    }
  }
  const Corpus related = SeparableRelationCorpus();
  RelationModel relations = TrainRelations(related, 5, 1);
  std::size_t pairs = 0, right = 0;
  for (const Document& d : related.documents) {
    for (const CandidatePair& p : CandidatePairs(d, relations.window())) {
      std::string gold;  // empty means no relation
      for (const Relation& r : d.relations) {
        if (r.head == d.mentions[p.head].id && r.tail == d.mentions[p.tail].id) {
          gold = r.type;
        }
      }
      ++pairs;
      if (relations.Classify(d, p) == gold) ++right;
    }
  }
  return {correct == tokens && right == pairs,
          fmt::format("tagger {}/{} tokens, relations {}/{} pairs", correct,
                      tokens, right, pairs)};
}

}  // namespace
}  // namespace procaug::testing

int main(int argc, char** argv) {
  using namespace procaug::testing;
  const std::vector<Criterion> criteria = {
      {1, "annotation preservation", 120, AnnotationPreservation},
      {2, "identity configurations", 60, IdentityConfigurations},
      {3, "determinism", 300, Determinism},
      {4, "scoring oracle", 60, ScoringOracle},
      {5, "direction property", 120, DirectionProperty},
      {6, "TPE sanity", 60, TpeSanity},
      {7, "end-to-end gain direction", 900, EndToEndGain},
      {8, "stats invariants", 60, StatsInvariants},
      {9, "baseline separability", 60, BaselineSeparability}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  bool all = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.contains(c.number)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    bool in_time = seconds < c.budget_seconds;
    bool pass = outcome.pass && in_time;
    all = all && pass;
    std::cout << fmt::format("{} {} {} ({:.1f}s of {:.0f}s): {}{}\n",
                             pass ? "PASS" : "FAIL", c.number, c.title,
                             seconds, c.budget_seconds, outcome.detail,
                             in_time ? "" : " [over time budget]")
              << std::flush;
  }
  return all ? 0 : 1;
}
