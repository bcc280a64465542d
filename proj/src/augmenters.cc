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

#include "procaug/augmenters.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "procaug/edit.h"
#include "procaug/util.h"

namespace procaug {
namespace {

// ---------------------------------------------------------------------------
// Catalogue

ParamSpec Probability(std::string name, double default_value = 0.1) {
  return ParamSpec::Float(std::move(name), 0.0, 1.0, default_value);
}

ParamSpec Count(std::string name) { return ParamSpec::Int(std::move(name), 0, 10, 1); }

ParamSpec Flag(std::string name) {
  return ParamSpec::Categorical(std::move(name), {"false", "true"}, "false");
}

ParamSpec AugmentationFactor() {
  return ParamSpec::Int(std::string(kAugmentationFactor), 1, 5, 1);
}

ParamSpec SubstitutionMode() {
  return ParamSpec::Categorical(
      "mode", {"synonym", "adjective_antonym", "antonym_even"}, "synonym");
}

ParamSpec Pivot() {
  return ParamSpec::Categorical("pivot", {"de", "fr", "es"}, "de");
}

// Full operation-level spaces, before any pinning.
std::vector<ParamSpec> OperationDimensions(std::string_view op) {
  if (op == ops::kRandomTokenDeletion) return {Probability("p")};
  if (op == ops::kRandomTokenInsertion) return {Count("n")};
  if (op == ops::kRandomTokenSwap) return {Count("s")};
  if (op == ops::kFillerWordInsertion) {
    return {Probability("p"), Flag("in_mentions")};
  }
  if (op == ops::kSynonymInsertion) return {Probability("p")};
  if (op == ops::kLexiconSubstitution) {
    return {SubstitutionMode(), Probability("p"), Count("k")};
  }
  if (op == ops::kAuxiliaryNegationRemoval) return {Probability("p")};
  if (op == ops::kAbbreviationToggle) return {Probability("p")};
  if (op == ops::kMentionReplacement) return {Probability("p")};
  if (op == ops::kShuffleWithinSegments) return {Probability("p")};
  if (op == ops::kSentenceReordering) {
    return {Probability("p", 1.0),
            ParamSpec::Int("max_displacement", 0, 10, 0)};
  }
  if (op == ops::kSentenceConcatenation) return {Count("n_merges")};
  if (op == ops::kSubsequenceSubstitution) {
    return {Probability("p"), ParamSpec::Int("length", 1, 5, 1)};
  }
  if (op == ops::kParaphraseSpans) return {Pivot()};
  if (op == ops::kModelWordReplacement) {
    return {Probability("p"), Flag("in_mentions")};
  }
  throw UnknownTechniqueError(std::string(op));
}

const std::vector<std::string_view>& AllOperations() {
  static const std::vector<std::string_view> kOps = {
      ops::kRandomTokenDeletion,     ops::kRandomTokenInsertion,
      ops::kRandomTokenSwap,         ops::kFillerWordInsertion,
      ops::kSynonymInsertion,        ops::kLexiconSubstitution,
      ops::kAuxiliaryNegationRemoval, ops::kAbbreviationToggle,
      ops::kMentionReplacement,      ops::kShuffleWithinSegments,
      ops::kSentenceReordering,      ops::kSentenceConcatenation,
      ops::kSubsequenceSubstitution, ops::kParaphraseSpans,
      ops::kModelWordReplacement};
  return kOps;
}

// Parameters each operation actually reads for a given pinned mode; pinned
// or irrelevant dimensions are dropped from catalogue-id spaces.
Technique MakeTechnique(std::string id, std::string_view op, std::string name,
                        ParamMap fixed, std::set<std::string> drop = {}) {
  Technique t;
  t.id = std::move(id);
  t.operation = std::string(op);
  t.name = std::move(name);
  std::vector<ParamSpec> dims;
  for (ParamSpec& d : OperationDimensions(op)) {
    if (!fixed.contains(d.name) && !drop.contains(d.name)) {
      dims.push_back(std::move(d));
    }
  }
  dims.push_back(AugmentationFactor());
  t.space = ParamSpace(std::move(dims));
  t.fixed = std::move(fixed);
  t.preserves_direction =
      op != ops::kSentenceReordering && op != ops::kSentenceConcatenation;
  t.needs_lexicon = op == ops::kFillerWordInsertion ||
                    op == ops::kSynonymInsertion ||
                    op == ops::kLexiconSubstitution ||
                    op == ops::kAbbreviationToggle ||
                    op == ops::kSubsequenceSubstitution;
  t.needs_provider =
      op == ops::kParaphraseSpans || op == ops::kModelWordReplacement;
  return t;
}

std::vector<Technique> BuildCatalogue() {
  std::vector<Technique> all;
  all.push_back(MakeTechnique("B.3", ops::kLexiconSubstitution,
                              "Adjectives Antonyms Switch",
                              {{"mode", std::string("adjective_antonym")}},
                              {"k"}));
  all.push_back(MakeTechnique("B.5", ops::kLexiconSubstitution,
                              "AntonymsSubstitute (Double Negation)",
                              {{"mode", std::string("antonym_even")}}, {"p"}));
  all.push_back(MakeTechnique("B.6", ops::kAuxiliaryNegationRemoval,
                              "Auxiliary Negation Removal", {}));
  all.push_back(MakeTechnique("B.8", ops::kParaphraseSpans, "BackTranslation",
                              {{"pivot", std::string("de")}}));
  all.push_back(MakeTechnique("B.24", ops::kSentenceConcatenation,
                              "Concatenate Two Random Sentences", {}));
  all.push_back(MakeTechnique("B.26", ops::kModelWordReplacement,
                              "Contextual Meaning Perturbation",
                              {{"in_mentions", std::string("false")}}));
  all.push_back(MakeTechnique("B.39", ops::kMentionReplacement,
                              "English Mention Replacement for NER", {}));
  all.push_back(MakeTechnique("B.40", ops::kFillerWordInsertion,
                              "Filler Word Augmentation", {}));
  all.push_back(MakeTechnique("B.62", ops::kParaphraseSpans,
                              "Multilingual Back Translation", {}));
  all.push_back(MakeTechnique("B.79", ops::kRandomTokenDeletion,
                              "Random Word Deletion", {}));
  all.push_back(MakeTechnique("B.82", ops::kAbbreviationToggle,
                              "Replace Abbreviations and Acronyms", {}));
  all.push_back(MakeTechnique("B.88", ops::kSentenceReordering,
                              "Sentence Reordering", {}));
  all.push_back(MakeTechnique("B.90", ops::kShuffleWithinSegments,
                              "Shuffle Within Segments", {}));
  all.push_back(MakeTechnique("B.100", ops::kSynonymInsertion,
                              "Synonym Insertion", {}));
  all.push_back(MakeTechnique("B.101", ops::kLexiconSubstitution,
                              "Synonym Substitution",
                              {{"mode", std::string("synonym")}}, {"k"}));
  all.push_back(MakeTechnique("B.103", ops::kSubsequenceSubstitution,
                              "Subsequence Substitution for Sequence Tagging",
                              {}));
  all.push_back(MakeTechnique("B.106", ops::kModelWordReplacement,
                              "Transformer Fill", {}));
  all.push_back(MakeTechnique("random_insert", ops::kRandomTokenInsertion,
                              "Random Insert", {}));
  all.push_back(
      MakeTechnique("random_swap", ops::kRandomTokenSwap, "Random Swap", {}));
  for (std::string_view op : AllOperations()) {
    all.push_back(MakeTechnique(std::string(op), op, std::string(op), {}));
  }
  return all;
}

// ---------------------------------------------------------------------------
// Shared helpers

struct Prepared {
  const Document* document = nullptr;
  const TechniqueConfig* config = nullptr;  // resolved
  const AugmentContext* context = nullptr;
  const std::vector<std::string>* vocabulary = nullptr;
  // coarse-POS sequence -> distinct donor token sequences
  const std::map<std::vector<Pos>, std::vector<std::vector<std::string>>>*
      donors = nullptr;
};

struct OpResult {
  Document document;
  bool applicable = true;
  std::vector<std::string> warnings;
};

const Lexicon& RequireLexicon(const AugmentContext& context,
                              std::string_view op) {
  if (!context.lexicon) {
    throw std::invalid_argument(std::string(op) + " requires a lexicon");
  }
  return *context.lexicon;
}

ParaphraseProvider& RequireProvider(const AugmentContext& context,
                                    std::string_view op) {
  if (!context.provider) {
    throw std::invalid_argument(std::string(op) +
                                " requires a paraphrase provider");
  }
  return *context.provider;
}

std::vector<std::size_t> FreeTokens(const Document& d) {
  std::vector<std::size_t> out;
  for (const Span& s : FreeSpans(d)) {
    for (std::size_t i = s.start; i <= s.end; ++i) out.push_back(i);
  }
  return out;
}

bool StrictlyInsideMention(const Document& d, std::size_t position) {
  for (const Mention& m : d.mentions) {
    if (m.start < position && position <= m.end) return true;
  }
  return false;
}

bool IsWordLike(std::string_view text) {
  return std::any_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  });
}

// Applies single-position edits from right to left so that each edit's
// indices refer to the original document. Rejected edits are skipped.
Document ApplyAtPositions(const Document& d,
                          std::vector<std::pair<std::size_t, Edit>> edits) {
  std::stable_sort(edits.begin(), edits.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Edit> ordered;
  ordered.reserve(edits.size());
  for (auto& [position, edit] : edits) ordered.push_back(std::move(edit));
  return ApplyEdits(d, ordered).first;
}

std::vector<std::string> Words(std::string_view phrase, std::string_view like) {
  return SplitWords(MatchCase(phrase, like));
}

std::string SentenceWithTarget(const Document& d, std::size_t target) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    if (d.tokens[i].sentence != d.tokens[target].sentence) continue;
    if (i == target) {
      words.push_back(std::string(kTargetOpen) + d.tokens[i].text +
                      std::string(kTargetClose));
    } else {
      words.push_back(d.tokens[i].text);
    }
  }
  return Join(words, " ");
}

// Calls the provider, degrading to "no rewrite" on failure.
std::optional<std::vector<std::string>> SafeRewrite(
    ParaphraseProvider& provider, const std::vector<std::string>& texts,
    const RewriteMode& mode, std::uint64_t seed,
    std::vector<std::string>& warnings) {
  try {
    std::vector<std::string> out = provider.Rewrite(texts, mode, seed);
    if (out.size() != texts.size()) {
      warnings.push_back("provider returned " + std::to_string(out.size()) +
                         " texts for " + std::to_string(texts.size()) +
                         "; spans kept");
      return std::nullopt;
    }
    return out;
  } catch (const std::exception& e) {
    warnings.push_back(std::string("provider failed: ") + e.what() +
                       "; spans kept");
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Operations

OpResult RandomTokenDeletion(const Prepared& in, Rng& rng) {
  const Document& d = *in.document;
  const double p = GetFloat(in.config->params, "p");
  const std::vector<std::size_t> free = FreeTokens(d);
  DeleteTokens edit;
  for (std::size_t i : free) {
    if (rng.Bernoulli(p)) edit.positions.insert(i);
  }
  return {ApplyEdit(d, edit).first, !free.empty(), {}};
}

OpResult RandomTokenInsertion(const Prepared& in, Rng& rng) {
  const std::int64_t n = GetInt(in.config->params, "n");
  const std::vector<std::string>& vocabulary = *in.vocabulary;
  Document d = *in.document;
  if (vocabulary.empty()) return {d, false, {}};
  for (std::int64_t k = 0; k < n; ++k) {
    std::vector<std::size_t> positions;
    for (std::size_t p = 0; p <= d.tokens.size(); ++p) {
      if (!StrictlyInsideMention(d, p)) positions.push_back(p);
    }
    const std::size_t position = positions[rng.Index(positions.size())];
    const std::string& word = vocabulary[rng.Index(vocabulary.size())];
    d = ApplyEdit(d, InsertTokens{position, {word}, SentencePolicy::kFollowing})
            .first;
  }
  return {std::move(d), true, {}};
}

OpResult RandomTokenSwap(const Prepared& in, Rng& rng) {
  const std::int64_t s = GetInt(in.config->params, "s");
  Document d = *in.document;
  // Swap groups: the free tokens, then each mention's tokens.
  std::vector<std::vector<std::size_t>> groups = {FreeTokens(d)};
  for (const Mention& m : d.mentions) {
    std::vector<std::size_t> g;
    for (std::size_t i = m.start; i <= m.end; ++i) g.push_back(i);
    groups.push_back(std::move(g));
  }
  std::vector<std::uint64_t> pairs;
  std::uint64_t total = 0;
  for (const auto& g : groups) {
    pairs.push_back(g.size() * (g.size() > 0 ? g.size() - 1 : 0) / 2);
    total += pairs.back();
  }
  if (total == 0) return {d, false, {}};
  for (std::int64_t k = 0; k < s; ++k) {
    std::uint64_t r = rng.Index(total);
    std::size_t g = 0;
    while (r >= pairs[g]) r -= pairs[g++];
    const std::vector<std::size_t>& group = groups[g];
    const std::size_t a = rng.Index(group.size());
    std::size_t b = rng.Index(group.size() - 1);
    if (b >= a) ++b;
    d = ApplyEdit(d, SwapTokens{group[a], group[b]}).first;
  }
  return {std::move(d), true, {}};
}

OpResult FillerWordInsertion(const Prepared& in, Rng& rng) {
  const Lexicon& lexicon = RequireLexicon(*in.context, ops::kFillerWordInsertion);
  const double p = GetFloat(in.config->params, "p");
  const bool in_mentions = GetBool(in.config->params, "in_mentions");
  const Document& d = *in.document;

  std::set<std::size_t> points;
  for (const Span& s : SentenceSpans(d)) points.insert(s.start);
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    if (d.tokens[i].text == ",") points.insert(i + 1);
  }
  if (in_mentions) {
    for (const Mention& m : d.mentions) {
      for (std::size_t i = m.start + 1; i <= m.end; ++i) points.insert(i);
    }
  } else {
    std::erase_if(points, [&d](std::size_t pt) {
      return StrictlyInsideMention(d, pt);
    });
  }
  const std::vector<std::string>& fillers = lexicon.fillers();
  std::vector<std::pair<std::size_t, Edit>> edits;
  for (std::size_t pt : points) {
    if (!rng.Bernoulli(p)) continue;
    const std::string& filler = fillers[rng.Index(fillers.size())];
    edits.emplace_back(
        pt, InsertTokens{pt, SplitWords(filler), SentencePolicy::kFollowing});
  }
  return {ApplyAtPositions(d, std::move(edits)), !points.empty(), {}};
}

OpResult SynonymInsertion(const Prepared& in, Rng& rng) {
  const Lexicon& lexicon = RequireLexicon(*in.context, ops::kSynonymInsertion);
  const double p = GetFloat(in.config->params, "p");
  const Document& d = *in.document;
  bool applicable = false;
  std::vector<std::pair<std::size_t, Edit>> edits;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    const std::string& text = d.tokens[i].text;
    if (lexicon.IsStopword(text)) continue;
    const std::vector<std::string>& synonyms = lexicon.Synonyms(text);
    if (synonyms.empty()) continue;
    applicable = true;
    if (!rng.Bernoulli(p)) continue;
    std::vector<std::string> texts =
        Words(synonyms[rng.Index(synonyms.size())], text);
    texts.push_back(text);
    edits.emplace_back(i, ReplaceSpan{i, i, std::move(texts)});
  }
  return {ApplyAtPositions(d, std::move(edits)), applicable, {}};
}

OpResult LexiconSubstitution(const Prepared& in, Rng& rng) {
  const Lexicon& lexicon =
      RequireLexicon(*in.context, ops::kLexiconSubstitution);
  const ParamMap& params = in.config->params;
  const std::string& mode = GetString(params, "mode");
  const Document& d = *in.document;

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    const std::string& text = d.tokens[i].text;
    if (lexicon.IsStopword(text)) continue;
    if (mode == "synonym") {
      if (!lexicon.Synonyms(text).empty()) eligible.push_back(i);
    } else if (mode == "adjective_antonym") {
      if (lexicon.CoarsePos(text) == Pos::kAdj &&
          !lexicon.Antonyms(text).empty()) {
        eligible.push_back(i);
      }
    } else if (!lexicon.Antonyms(text).empty()) {
      eligible.push_back(i);
    }
  }

  auto replace = [&](std::size_t i, const std::vector<std::string>& options) {
    const std::string& text = d.tokens[i].text;
    return std::pair<std::size_t, Edit>(
        i, ReplaceSpan{i, i, Words(options[rng.Index(options.size())], text)});
  };

  std::vector<std::pair<std::size_t, Edit>> edits;
  if (mode == "antonym_even") {
    if (eligible.size() < 2) return {d, false, {}};
    const std::size_t wanted = static_cast<std::size_t>(2 * GetInt(params, "k"));
    const std::size_t count = std::min(wanted, eligible.size() / 2 * 2);
    std::vector<std::size_t> chosen = eligible;
    rng.Shuffle(chosen);
    chosen.resize(count);
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t i : chosen) {
      edits.push_back(replace(i, lexicon.Antonyms(d.tokens[i].text)));
    }
  } else {
    const double p = GetFloat(params, "p");
    for (std::size_t i : eligible) {
      if (!rng.Bernoulli(p)) continue;
      const std::string& text = d.tokens[i].text;
      edits.push_back(replace(i, mode == "synonym" ? lexicon.Synonyms(text)
                                                   : lexicon.Antonyms(text)));
    }
  }
  return {ApplyAtPositions(d, std::move(edits)), !eligible.empty(), {}};
}

const std::set<std::string>& Auxiliaries() {
  static const std::set<std::string> kAux = {
      "is",    "are",    "was",  "were",   "do",   "does", "did", "can",
      "could", "will",   "would", "should", "must", "has",  "have", "had"};
  return kAux;
}

OpResult AuxiliaryNegationRemoval(const Prepared& in, Rng& rng) {
  const double p = GetFloat(in.config->params, "p");
  const Document& d = *in.document;
  bool applicable = false;
  std::vector<std::pair<std::size_t, Edit>> edits;
  for (std::size_t i = 1; i < d.tokens.size(); ++i) {
    const std::string word = ToLower(d.tokens[i].text);
    if (word != "not" && word != "n't") continue;
    if (d.tokens[i].sentence != d.tokens[i - 1].sentence) continue;
    if (!Auxiliaries().contains(ToLower(d.tokens[i - 1].text))) continue;
    applicable = true;
    if (rng.Bernoulli(p)) edits.emplace_back(i, DeleteTokens{{i}});
  }
  return {ApplyAtPositions(d, std::move(edits)), applicable, {}};
}

OpResult AbbreviationToggle(const Prepared& in, Rng& rng) {
  const Lexicon& lexicon = RequireLexicon(*in.context, ops::kAbbreviationToggle);
  const double p = GetFloat(in.config->params, "p");
  const Document& d = *in.document;

  struct Match {
    std::size_t start, end;
    std::vector<std::string> replacement;
  };
  std::vector<Match> matches;
  std::size_t i = 0;
  while (i < d.tokens.size()) {
    const Match* best = nullptr;
    Match candidate;
    for (const auto& [long_form, short_form] : lexicon.contractions()) {
      const std::size_t len = long_form.size();
      if (i + len > d.tokens.size()) continue;
      if (best && len <= best->end - best->start + 1) continue;
      bool equal = true;
      for (std::size_t k = 0; k < len && equal; ++k) {
        equal = d.tokens[i + k].text == long_form[k];
      }
      if (!equal) continue;
      // The long form must sit inside one sentence and one segment.
      const int owner = d.MentionAt(i);
      bool one_piece = true;
      for (std::size_t k = 1; k < len && one_piece; ++k) {
        one_piece = d.MentionAt(i + k) == owner &&
                    d.tokens[i + k].sentence == d.tokens[i].sentence;
      }
      if (!one_piece) continue;
      candidate = {i, i + len - 1, {short_form}};
      best = &candidate;
    }
    if (best) {
      matches.push_back(*best);
      i = best->end + 1;
      continue;
    }
    auto it = lexicon.expansions().find(d.tokens[i].text);
    if (it != lexicon.expansions().end()) {
      matches.push_back({i, i, it->second});
    }
    ++i;
  }

  std::vector<std::pair<std::size_t, Edit>> edits;
  for (Match& m : matches) {
    if (rng.Bernoulli(p)) {
      edits.emplace_back(m.start,
                         ReplaceSpan{m.start, m.end, std::move(m.replacement)});
    }
  }
  return {ApplyAtPositions(d, std::move(edits)), !matches.empty(), {}};
}

OpResult MentionReplacement(const Prepared& in, Rng& rng) {
  const double p = GetFloat(in.config->params, "p");
  const Document& d = *in.document;
  std::vector<std::size_t> order(d.mentions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&d](std::size_t a, std::size_t b) {
    return d.mentions[a].start < d.mentions[b].start;
  });

  bool applicable = false;
  std::vector<std::pair<std::size_t, Edit>> edits;
  for (std::size_t i : order) {
    const Mention& m = d.mentions[i];
    std::vector<std::size_t> candidates;
    for (std::size_t j : order) {
      if (j != i && d.mentions[j].type == m.type) candidates.push_back(j);
    }
    if (candidates.empty()) continue;
    applicable = true;
    if (!rng.Bernoulli(p)) continue;
    const Mention& donor = d.mentions[candidates[rng.Index(candidates.size())]];
    std::vector<std::string> texts;
    for (std::size_t k = donor.start; k <= donor.end; ++k) {
      texts.push_back(d.tokens[k].text);
    }
    edits.emplace_back(m.start, ReplaceSpan{m.start, m.end, std::move(texts)});
  }
  return {ApplyAtPositions(d, std::move(edits)), applicable, {}};
}

OpResult ShuffleWithinSegments(const Prepared& in, Rng& rng) {
  const double p = GetFloat(in.config->params, "p");
  const Document& d = *in.document;
  bool applicable = false;
  std::vector<Edit> swaps;
  for (const Segment& segment : Segments(d)) {
    const std::size_t len = segment.span.length();
    if (len < 2) continue;
    applicable = true;
    if (!rng.Bernoulli(p)) continue;
    for (std::size_t k = len - 1; k > 0; --k) {
      const std::size_t j = rng.Index(k + 1);
      if (j != k) {
        swaps.push_back(SwapTokens{segment.span.start + k, segment.span.start + j});
      }
    }
  }
  return {ApplyEdits(d, swaps).first, applicable, {}};
}

std::vector<std::size_t> SentencePermutation(std::size_t m,
                                             std::size_t max_displacement,
                                             Rng& rng) {
  std::vector<std::size_t> order(m);
  auto identity = [&order] {
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (order[j] != j) return false;
    }
    return true;
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (std::size_t j = 0; j < m; ++j) order[j] = j;
    if (max_displacement == 0 || max_displacement + 1 >= m) {
      rng.Shuffle(order);
    } else {
      // Sorting by position plus uniform jitter in [0, d+1) keeps every
      // sentence within d places of where it started.
      std::vector<std::pair<double, std::size_t>> keys;
      for (std::size_t j = 0; j < m; ++j) {
        keys.emplace_back(static_cast<double>(j) +
                              rng.Uniform(0.0, max_displacement + 1.0),
                          j);
      }
      std::sort(keys.begin(), keys.end());
      for (std::size_t j = 0; j < m; ++j) order[j] = keys[j].second;
    }
    if (!identity()) return order;
  }
  for (std::size_t j = 0; j < m; ++j) order[j] = j;
  const std::size_t j = rng.Index(m - 1);
  std::swap(order[j], order[j + 1]);
  return order;
}

OpResult SentenceReordering(const Prepared& in, Rng& rng) {
  const double p = GetFloat(in.config->params, "p");
  const std::int64_t max_displacement =
      GetInt(in.config->params, "max_displacement");
  const Document& d = *in.document;
  const std::size_t m = SentenceSpans(d).size();
  if (m < 2) return {d, false, {}};
  if (!rng.Bernoulli(p)) return {d, true, {}};
  PermuteSentences edit{SentencePermutation(
      m, static_cast<std::size_t>(max_displacement), rng)};
  return {ApplyEdit(d, edit).first, true, {}};
}

OpResult SentenceConcatenation(const Prepared& in, Rng& rng) {
  const std::int64_t n_merges = GetInt(in.config->params, "n_merges");
  Document d = *in.document;
  const bool applicable = SentenceSpans(d).size() >= 2;
  for (std::int64_t k = 0; k < n_merges; ++k) {
    const std::size_t m = SentenceSpans(d).size();
    if (m < 2) break;
    d = ApplyEdit(d, MergeSentences{rng.Index(m - 1)}).first;
  }
  return {std::move(d), applicable, {}};
}

OpResult SubsequenceSubstitution(const Prepared& in, Rng& rng) {
  const Lexicon& lexicon =
      RequireLexicon(*in.context, ops::kSubsequenceSubstitution);
  const double p = GetFloat(in.config->params, "p");
  const std::size_t length =
      static_cast<std::size_t>(GetInt(in.config->params, "length"));
  const Document& d = *in.document;

  bool applicable = false;
  std::vector<std::pair<std::size_t, Edit>> edits;
  for (const Segment& segment : Segments(d)) {
    if (segment.mention >= 0) continue;
    std::size_t i = segment.span.start;
    while (i + length - 1 <= segment.span.end) {
      applicable = true;
      if (!rng.Bernoulli(p)) {
        ++i;
        continue;
      }
      std::vector<Pos> tags;
      std::vector<std::string> current;
      for (std::size_t k = i; k < i + length; ++k) {
        tags.push_back(lexicon.CoarsePos(d.tokens[k].text));
        current.push_back(d.tokens[k].text);
      }
      std::vector<const std::vector<std::string>*> candidates;
      auto it = in.donors->find(tags);
      if (it != in.donors->end()) {
        for (const auto& seq : it->second) {
          if (seq != current) candidates.push_back(&seq);
        }
      }
      if (candidates.empty()) {
        ++i;
        continue;
      }
      edits.emplace_back(
          i, ReplaceSpan{i, i + length - 1,
                         *candidates[rng.Index(candidates.size())]});
      i += length;
    }
  }
  return {ApplyAtPositions(d, std::move(edits)), applicable, {}};
}

OpResult ParaphraseSpans(const Prepared& in, Rng& rng) {
  ParaphraseProvider& provider =
      RequireProvider(*in.context, ops::kParaphraseSpans);
  const std::string& pivot = GetString(in.config->params, "pivot");
  const Document& d = *in.document;
  const std::vector<Segment> segments = Segments(d);
  if (segments.empty()) return {d, false, {}};

  std::vector<std::string> texts;
  for (const Segment& s : segments) {
    std::vector<std::string> words;
    for (std::size_t i = s.span.start; i <= s.span.end; ++i) {
      words.push_back(d.tokens[i].text);
    }
    texts.push_back(Join(words, " "));
  }
  OpResult result{d, true, {}};
  const auto rewrites = SafeRewrite(provider, texts,
                                    RewriteMode::BackTranslate(pivot),
                                    rng.NextU64(), result.warnings);
  if (!rewrites) return result;

  std::vector<std::pair<std::size_t, Edit>> edits;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    std::vector<std::string> words = SplitWords((*rewrites)[k]);
    // An empty rewrite would delete the span; keep the original instead.
    if (words.empty() || words == SplitWords(texts[k])) continue;
    edits.emplace_back(segments[k].span.start,
                       ReplaceSpan{segments[k].span.start, segments[k].span.end,
                                   std::move(words)});
  }
  result.document = ApplyAtPositions(d, std::move(edits));
  return result;
}

OpResult ModelWordReplacement(const Prepared& in, Rng& rng) {
  ParaphraseProvider& provider =
      RequireProvider(*in.context, ops::kModelWordReplacement);
  const double p = GetFloat(in.config->params, "p");
  const bool in_mentions = GetBool(in.config->params, "in_mentions");
  const Document& d = *in.document;

  bool applicable = false;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    if (!IsWordLike(d.tokens[i].text)) continue;
    if (!in_mentions && d.MentionAt(i) >= 0) continue;
    applicable = true;
    if (rng.Bernoulli(p)) chosen.push_back(i);
  }
  OpResult result{d, applicable, {}};
  if (chosen.empty()) return result;

  std::vector<std::string> requests;
  for (std::size_t i : chosen) requests.push_back(SentenceWithTarget(d, i));
  const auto replies = SafeRewrite(provider, requests, RewriteMode::Contextual(),
                                   rng.NextU64(), result.warnings);
  if (!replies) return result;

  std::vector<std::pair<std::size_t, Edit>> edits;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const std::size_t i = chosen[k];
    std::vector<std::string> words = SplitWords((*replies)[k]);
    if (words.empty() ||
        (words.size() == 1 && words[0] == d.tokens[i].text)) {
      continue;
    }
    edits.emplace_back(i, ReplaceSpan{i, i, std::move(words)});
  }
  result.document = ApplyAtPositions(d, std::move(edits));
  return result;
}

using Operation = OpResult (*)(const Prepared&, Rng&);

Operation FindOperation(std::string_view op) {
  static const std::map<std::string_view, Operation> kOperations = {
      {ops::kRandomTokenDeletion, &RandomTokenDeletion},
      {ops::kRandomTokenInsertion, &RandomTokenInsertion},
      {ops::kRandomTokenSwap, &RandomTokenSwap},
      {ops::kFillerWordInsertion, &FillerWordInsertion},
      {ops::kSynonymInsertion, &SynonymInsertion},
      {ops::kLexiconSubstitution, &LexiconSubstitution},
      {ops::kAuxiliaryNegationRemoval, &AuxiliaryNegationRemoval},
      {ops::kAbbreviationToggle, &AbbreviationToggle},
      {ops::kMentionReplacement, &MentionReplacement},
      {ops::kShuffleWithinSegments, &ShuffleWithinSegments},
      {ops::kSentenceReordering, &SentenceReordering},
      {ops::kSentenceConcatenation, &SentenceConcatenation},
      {ops::kSubsequenceSubstitution, &SubsequenceSubstitution},
      {ops::kParaphraseSpans, &ParaphraseSpans},
      {ops::kModelWordReplacement, &ModelWordReplacement},
  };
  return kOperations.at(op);
}

// Corpus-wide resources shared by every document of one augmentation run.
struct Resources {
  std::vector<std::string> vocabulary;
  std::map<std::vector<Pos>, std::vector<std::vector<std::string>>> donors;
};

Resources BuildResources(const Technique& technique,
                         const TechniqueConfig& config,
                         const std::vector<const Document*>& source,
                         const Lexicon* lexicon) {
  Resources r;
  if (technique.operation == ops::kRandomTokenInsertion) {
    std::set<std::string> words;
    for (const Document* d : source) {
      for (const Token& t : d->tokens) words.insert(t.text);
    }
    r.vocabulary.assign(words.begin(), words.end());
  }
  if (technique.operation == ops::kSubsequenceSubstitution && lexicon) {
    const std::size_t length =
        static_cast<std::size_t>(GetInt(config.params, "length"));
    std::map<std::vector<Pos>, std::set<std::vector<std::string>>> unique;
    for (const Document* d : source) {
      for (const Segment& s : Segments(*d)) {
        if (s.mention >= 0) continue;
        for (std::size_t i = s.span.start; i + length - 1 <= s.span.end; ++i) {
          std::vector<Pos> tags;
          std::vector<std::string> words;
          for (std::size_t k = i; k < i + length; ++k) {
            tags.push_back(lexicon->CoarsePos(d->tokens[k].text));
            words.push_back(d->tokens[k].text);
          }
          unique[tags].insert(std::move(words));
        }
      }
    }
    for (auto& [tags, sequences] : unique) {
      r.donors[tags].assign(sequences.begin(), sequences.end());
    }
  }
  return r;
}

AugmentOutcome AugmentWithResources(const Document& document,
                                    const TechniqueConfig& resolved,
                                    const Technique& technique,
                                    const AugmentContext& context,
                                    const Resources& resources,
                                    std::uint64_t seed) {
  const Operation op = FindOperation(technique.operation);
  Prepared prepared{&document, &resolved, &context, &resources.vocabulary,
                    &resources.donors};
  AugmentOutcome outcome;
  for (std::int64_t k = 1; k <= resolved.n_aug; ++k) {
    Rng rng(DeriveSeed(seed, {document.id, resolved.technique_id},
                       static_cast<std::uint64_t>(k)));
    OpResult r = op(prepared, rng);
    if (!r.applicable) outcome.no_op = true;
    for (std::string& w : r.warnings) {
      outcome.warnings.push_back(document.id + ": " + std::move(w));
    }
    r.document.id = document.id + "-aug" + std::to_string(k);
    std::vector<Violation> violations = ValidateDocument(r.document);
    if (!violations.empty()) {
      throw std::logic_error(technique.operation + " produced an invalid document (" +
                             violations.front().rule + ")");
    }
    outcome.documents.push_back(std::move(r.document));
  }
  return outcome;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

const std::vector<Technique>& Techniques() {
  static const std::vector<Technique> kCatalogue = BuildCatalogue();
  return kCatalogue;
}

const Technique& FindTechnique(std::string_view id) {
  for (const Technique& t : Techniques()) {
    if (t.id == id) return t;
  }
  throw UnknownTechniqueError(std::string(id));
}

std::vector<std::string> CatalogueTechniqueIds() {
  std::vector<std::string> ids;
  for (const Technique& t : Techniques()) {
    if (t.id != t.operation) ids.push_back(t.id);
  }
  return ids;
}

std::vector<std::string> OperationNames() {
  return {AllOperations().begin(), AllOperations().end()};
}

TechniqueConfig DefaultConfig(std::string_view id) {
  const Technique& t = FindTechnique(id);
  TechniqueConfig config;
  config.technique_id = t.id;
  config.params = t.fixed;
  for (const ParamSpec& d : t.space.dimensions()) {
    if (d.name == kAugmentationFactor) {
      config.n_aug = std::get<std::int64_t>(d.default_value);
    } else {
      config.params[d.name] = d.default_value;
    }
  }
  return config;
}

TechniqueConfig IdentityConfig(std::string_view id) {
  TechniqueConfig config = DefaultConfig(id);
  for (auto& [name, value] : config.params) {
    if (FindTechnique(id).fixed.contains(name)) continue;
    if (name == "p") value = 0.0;
    if (name == "n" || name == "s" || name == "k" || name == "n_merges") {
      value = std::int64_t{0};
    }
  }
  return config;
}

TechniqueConfig ResolveConfig(const TechniqueConfig& config) {
  const Technique& t = FindTechnique(config.technique_id);
  TechniqueConfig resolved = DefaultConfig(t.id);
  if (config.n_aug < 1) throw ConfigError("n_aug must be at least 1");
  resolved.n_aug = config.n_aug;
  for (const auto& [name, value] : config.params) {
    if (auto pinned = t.fixed.find(name); pinned != t.fixed.end()) {
      if (pinned->second != value) {
        throw ConfigError("parameter '" + name + "' is fixed to " +
                          FormatParamValue(pinned->second) + " for " + t.id);
      }
      continue;
    }
    const ParamSpec* spec = t.space.Find(name);
    if (!spec || name == kAugmentationFactor) {
      throw ConfigError("technique " + t.id + " has no parameter '" + name +
                        "'");
    }
    ParamValue v = value;
    // Integral values are accepted for float dimensions.
    if (spec->kind == ParamKind::kFloat) {
      if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) {
        v = static_cast<double>(*i);
      }
    }
    if (!spec->Contains(v)) {
      throw ConfigError("value " + FormatParamValue(value) +
                        " is outside the range of '" + name + "' for " + t.id);
    }
    resolved.params[name] = std::move(v);
  }
  return resolved;
}

TechniqueConfig ConfigFromPoint(std::string_view id, const ParamMap& point) {
  TechniqueConfig config;
  config.technique_id = std::string(id);
  for (const auto& [name, value] : point) {
    if (name == kAugmentationFactor) {
      config.n_aug = std::get<std::int64_t>(value);
    } else {
      config.params[name] = value;
    }
  }
  return ResolveConfig(config);
}

ParamMap PointFromConfig(const TechniqueConfig& config) {
  const Technique& t = FindTechnique(config.technique_id);
  ParamMap point;
  for (const ParamSpec& d : t.space.dimensions()) {
    if (d.name == kAugmentationFactor) {
      point[d.name] = config.n_aug;
    } else if (auto it = config.params.find(d.name); it != config.params.end()) {
      point[d.name] = it->second;
    }
  }
  return point;
}

AugmentOutcome Augment(const Document& document, const TechniqueConfig& config,
                       const AugmentContext& context, std::uint64_t seed) {
  const TechniqueConfig resolved = ResolveConfig(config);
  const Technique& technique = FindTechnique(resolved.technique_id);
  std::vector<const Document*> source;
  if (context.donor) {
    for (const Document& d : context.donor->documents) source.push_back(&d);
  } else {
    source.push_back(&document);
  }
  const Resources resources =
      BuildResources(technique, resolved, source, context.lexicon);
  return AugmentWithResources(document, resolved, technique, context,
                              resources, seed);
}

CorpusAugmentation AugmentCorpus(const Corpus& corpus,
                                 const TechniqueConfig& config,
                                 const AugmentContext& context,
                                 std::uint64_t seed, int workers) {
  const TechniqueConfig resolved = ResolveConfig(config);
  const Technique& technique = FindTechnique(resolved.technique_id);
  const Corpus& donor = context.donor ? *context.donor : corpus;
  std::vector<const Document*> source;
  for (const Document& d : donor.documents) source.push_back(&d);
  const Resources resources =
      BuildResources(technique, resolved, source, context.lexicon);

  std::vector<AugmentOutcome> outcomes(corpus.documents.size());
  ParallelFor(corpus.documents.size(), workers, [&](std::size_t i) {
    outcomes[i] = AugmentWithResources(corpus.documents[i], resolved, technique,
                                       context, resources, seed);
  });

  CorpusAugmentation result;
  result.synthetic.mention_types = corpus.mention_types;
  result.synthetic.relation_types = corpus.relation_types;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].no_op) {
      result.no_op_documents.push_back(corpus.documents[i].id);
    }
    for (Document& d : outcomes[i].documents) {
      result.synthetic.documents.push_back(std::move(d));
    }
    for (std::string& w : outcomes[i].warnings) {
      result.warnings.push_back(std::move(w));
    }
  }
  return result;
}

Corpus MergeCorpora(const Corpus& originals, const Corpus& synthetic) {
  Corpus merged = originals;
  merged.documents.insert(merged.documents.end(), synthetic.documents.begin(),
                          synthetic.documents.end());
  return merged;
}

}  // namespace procaug
