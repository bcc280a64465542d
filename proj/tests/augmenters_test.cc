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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "procaug/edit.h"
#include "procaug/hyperopt.h"
#include "procaug/provider.h"
#include "procaug/util.h"
#include "test_support.h"

namespace procaug {
namespace {

using testing::CorpusOf;
using testing::D1;
using testing::MakeDocument;

std::vector<std::string> Texts(const Document& d) {
  std::vector<std::string> out;
  for (const Token& t : d.tokens) out.push_back(t.text);
  return out;
}

using SpanList = std::vector<std::pair<std::size_t, std::size_t>>;

SpanList SpansOf(const Document& d) {
  SpanList out;
  for (const Mention& m : d.mentions) out.emplace_back(m.start, m.end);
  return out;
}

// Config for `id` with parameters overridden.
TechniqueConfig With(std::string_view id, const ParamMap& overrides,
                     std::int64_t n_aug = 1) {
  TechniqueConfig c = DefaultConfig(id);
  for (const auto& [k, v] : overrides) c.params[k] = v;
  c.n_aug = n_aug;
  return c;
}

// Runs one replica and checks the universal post-conditions.
AugmentOutcome RunOne(const Document& d, const TechniqueConfig& config,
                   const AugmentContext& ctx, std::uint64_t seed = 1) {
  AugmentOutcome out = Augment(d, config, ctx, seed);
  EXPECT_EQ(out.documents.size(), static_cast<std::size_t>(config.n_aug));
  for (std::size_t k = 0; k < out.documents.size(); ++k) {
    const Document& o = out.documents[k];
    EXPECT_EQ(o.id, d.id + "-aug" + std::to_string(k + 1));
    EXPECT_TRUE(ValidateDocument(o).empty());
    EXPECT_EQ(o.mentions.size(), d.mentions.size());
    EXPECT_EQ(testing::RelationMultiset(o), testing::RelationMultiset(d));
  }
  return out;
}

// Document equality ignoring the replica id suffix.
bool SameContent(Document a, const Document& b) {
  a.id = b.id;
  return a == b;
}

const ParamValue kTrue = std::string("true");
const ParamValue kFalse = std::string("false");

// ---------------------------------------------------------------------------
// Catalogue and configuration

TEST(CatalogueTest, Inventory) {
  std::vector<std::string> ids = CatalogueTechniqueIds();
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()),
            (std::set<std::string>{"B.3", "B.5", "B.6", "B.8", "B.24", "B.26",
                                   "B.39", "B.40", "B.62", "B.79", "B.82",
                                   "B.88", "B.90", "B.100", "B.101", "B.103",
                                   "B.106", "random_insert", "random_swap"}));
  EXPECT_EQ(OperationNames().size(), 15u);
  EXPECT_EQ(Techniques().size(), 34u);
  for (const std::string& op : OperationNames()) {
    EXPECT_EQ(FindTechnique(op).operation, op);
  }
  EXPECT_EQ(FindTechnique("B.88").operation, ops::kSentenceReordering);
  EXPECT_EQ(FindTechnique("B.24").operation, ops::kSentenceConcatenation);
}

TEST(CatalogueTest, UnknownTechniqueNamesTheId) {
  try {
    FindTechnique("B.999");
    FAIL();
  } catch (const UnknownTechniqueError& e) {
    EXPECT_NE(std::string(e.what()).find("B.999"), std::string::npos);
  }
}

TEST(CatalogueTest, DefaultSpaces) {
  for (const Technique& t : Techniques()) {
    const ParamSpec* n_aug = t.space.Find(kAugmentationFactor);
    ASSERT_NE(n_aug, nullptr) << t.id;
    EXPECT_EQ(n_aug->low, 1.0);
    EXPECT_EQ(n_aug->high, 5.0);
    EXPECT_EQ(n_aug->default_value, ParamValue(std::int64_t{1}));
    for (const ParamSpec& d : t.space.dimensions()) {
      if (d.name == "p" && t.operation != ops::kSentenceReordering) {
        EXPECT_EQ(d.default_value, ParamValue(0.1)) << t.id;
      }
      if (d.name == "n" || d.name == "s" || d.name == "k" ||
          d.name == "n_merges") {
        EXPECT_EQ(d.low, 0.0);
        EXPECT_EQ(d.high, 10.0);
        EXPECT_EQ(d.default_value, ParamValue(std::int64_t{1}));
      }
      if (d.name == "pivot") {
        EXPECT_EQ(d.choices, (std::vector<std::string>{"de", "fr", "es"}));
        EXPECT_EQ(d.default_value, ParamValue(std::string("de")));
      }
    }
  }
}

TEST(CatalogueTest, PinnedParameters) {
  EXPECT_EQ(GetString(DefaultConfig("B.101").params, "mode"), "synonym");
  EXPECT_EQ(GetString(DefaultConfig("B.3").params, "mode"), "adjective_antonym");
  EXPECT_EQ(GetString(DefaultConfig("B.5").params, "mode"), "antonym_even");
  EXPECT_EQ(GetString(DefaultConfig("B.8").params, "pivot"), "de");
  EXPECT_EQ(FindTechnique("B.101").space.Find("mode"), nullptr);
  EXPECT_EQ(FindTechnique("B.8").space.Find("pivot"), nullptr);
  EXPECT_NE(FindTechnique("B.62").space.Find("pivot"), nullptr);
  EXPECT_FALSE(GetBool(DefaultConfig("B.26").params, "in_mentions"));
}

TEST(CatalogueTest, ResolveConfigValidates) {
  TechniqueConfig c = DefaultConfig("B.79");
  c.n_aug = 0;
  EXPECT_THROW(ResolveConfig(c), ConfigError);
  EXPECT_THROW(ResolveConfig(With("B.79", {{"q", 0.5}})), ConfigError);
  EXPECT_THROW(ResolveConfig(With("B.79", {{"p", 1.5}})), ConfigError);
  EXPECT_THROW(ResolveConfig(With("B.79", {{"n_aug", std::int64_t{2}}})),
               ConfigError);
  EXPECT_THROW(
      ResolveConfig(With("B.101", {{"mode", std::string("antonym_even")}})),
      ConfigError);
  EXPECT_EQ(GetFloat(ResolveConfig(With("B.79", {{"p", std::int64_t{1}}})).params,
                     "p"),
            1.0);
  // Only the parameters that differ from defaults need to be given.
  TechniqueConfig sparse;
  sparse.technique_id = "B.62";
  sparse.params = {{"pivot", std::string("fr")}};
  EXPECT_EQ(GetString(ResolveConfig(sparse).params, "pivot"), "fr");
}

TEST(CatalogueTest, PointRoundTrip) {
  Rng rng(3);
  for (const Technique& t : Techniques()) {
    ParamMap point = SamplePrior(t.space, rng);
    TechniqueConfig c = ConfigFromPoint(t.id, point);
    EXPECT_EQ(PointFromConfig(c), point) << t.id;
  }
}

TEST(CatalogueTest, MissingResourcesAreErrors) {
  AugmentContext none;
  EXPECT_THROW(Augment(D1(), DefaultConfig("B.101"), none, 1),
               std::invalid_argument);
  EXPECT_THROW(Augment(D1(), DefaultConfig("B.8"), none, 1),
               std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Identity configurations

TEST(IdentityTest, EveryTechniqueHasOne) {
  IdentityProvider identity;
  for (const Technique& t : Techniques()) {
    AugmentContext ctx{&testing::BundledLexicon(), &identity, nullptr};
    AugmentOutcome out = RunOne(D1(), IdentityConfig(t.id), ctx, 9);
    ASSERT_EQ(out.documents.size(), 1u);
    EXPECT_TRUE(SameContent(out.documents[0], D1())) << t.id;
  }
}

// ---------------------------------------------------------------------------
// Operations

TEST(RandomDeletionTest, DeletesEveryFreeTokenAtOne) {
  AugmentContext ctx;
  Document out = RunOne(D1(), With("B.79", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), (std::vector<std::string>{"a", "claim", "registered",
                                                  "it", "examined"}));
  EXPECT_EQ(SpansOf(out), (SpanList{{0, 1}, {2, 2}, {3, 3}, {4, 4}}));
  EXPECT_EQ(out.relations, D1().relations);
}

TEST(RandomDeletionTest, HalfProbability) {
  AugmentContext ctx;
  Document out = RunOne(D1(), With("B.79", {{"p", 0.5}}), ctx, 42).documents[0];
  EXPECT_GE(out.tokens.size(), 4u);
  EXPECT_LE(out.tokens.size(), 10u);
}

TEST(RandomInsertionTest, InsertsExactlyN) {
  AugmentContext ctx;
  TechniqueConfig c = With("random_insert", {{"n", std::int64_t{3}}});
  Document out = RunOne(D1(), c, ctx, 4).documents[0];
  EXPECT_EQ(out.tokens.size(), 13u);
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(testing::MentionText(out, out.mentions[m]),
              testing::MentionText(D1(), D1().mentions[m]));
  }
  EXPECT_EQ(SerializeCorpus(CorpusOf(RunOne(D1(), c, ctx, 4).documents)),
            SerializeCorpus(CorpusOf({out})));
}

TEST(RandomInsertionTest, WordsComeFromDonorVocabulary) {
  Corpus donor = CorpusOf({MakeDocument("v", "zebra")});
  AugmentContext ctx{nullptr, nullptr, &donor};
  Document out =
      RunOne(D1(), With("random_insert", {{"n", std::int64_t{2}}}), ctx).documents[0];
  EXPECT_EQ(std::count(out.tokens.begin(), out.tokens.end(), Token{"zebra", 0}),
            2);
}

TEST(RandomSwapTest, ConservesTokens) {
  AugmentContext ctx;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Document out =
        RunOne(D1(), With("random_swap", {{"s", std::int64_t{5}}}), ctx, seed)
            .documents[0];
    auto a = Texts(out), b = Texts(D1());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    EXPECT_EQ(SpansOf(out), SpansOf(D1()));
  }
}

TEST(RandomSwapTest, SingleTokenIsNoOp) {
  AugmentContext ctx;
  AugmentOutcome out = RunOne(MakeDocument("one", "Stop"),
                           With("random_swap", {{"s", std::int64_t{3}}}), ctx);
  EXPECT_TRUE(out.no_op);
  EXPECT_EQ(Texts(out.documents[0]), std::vector<std::string>{"Stop"});
}

TEST(FillerTest, EveryEligiblePointReceivesPhrase) {
  Lexicon lex;
  lex.AddFiller("I think");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document out =
      RunOne(D1(), With("B.40", {{"p", 1.0}, {"in_mentions", kFalse}}), ctx)
          .documents[0];
  // Points: the sentence start and after the comma.
  EXPECT_EQ(Texts(out),
            (std::vector<std::string>{"I", "think", "After", "a", "claim", "is",
                                      "registered", ",", "I", "think", "it",
                                      "is", "examined", "."}));
  EXPECT_EQ(SpansOf(out), (SpanList{{3, 4}, {6, 6}, {10, 10}, {12, 12}}));
}

TEST(FillerTest, InteriorPointGrowsMention) {
  Lexicon lex;
  lex.AddFiller("I think");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document out =
      RunOne(D1(), With("B.40", {{"p", 1.0}, {"in_mentions", kTrue}}), ctx)
          .documents[0];
  EXPECT_EQ(out.mentions[0].length(), 4u);
  EXPECT_EQ(testing::MentionText(out, out.mentions[0]), "a I think claim");
  for (std::size_t m = 1; m < 4; ++m) EXPECT_EQ(out.mentions[m].length(), 1u);
}

TEST(SynonymInsertionTest, InsertsBeforeCoveredToken) {
  Lexicon lex;
  lex.AddSynonym("examined", Pos::kVerb, "inspected");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document out = RunOne(D1(), With("B.100", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(out.tokens.size(), 11u);
  EXPECT_EQ(out.tokens[8].text, "inspected");
  EXPECT_EQ(out.tokens[9].text, "examined");
  EXPECT_EQ(SpansOf(out)[3], std::make_pair(std::size_t{8}, std::size_t{9}));
}

TEST(SynonymInsertionTest, EmptyLexiconIsNoOp) {
  Lexicon lex;
  AugmentContext ctx{&lex, nullptr, nullptr};
  AugmentOutcome out = RunOne(D1(), With("B.100", {{"p", 1.0}}), ctx);
  EXPECT_TRUE(out.no_op);
  EXPECT_TRUE(SameContent(out.documents[0], D1()));
}

TEST(LexiconSubstitutionTest, SynonymModeReplacesCoveredTokensOnly) {
  Lexicon lex;
  lex.AddSynonym("claim", Pos::kNoun, "request");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document out = RunOne(D1(), With("B.101", {{"p", 1.0}}), ctx).documents[0];
  std::vector<std::string> expected = Texts(D1());
  expected[2] = "request";
  EXPECT_EQ(Texts(out), expected);
}

TEST(LexiconSubstitutionTest, MultiWordSynonymGrowsMention) {
  Lexicon lex;
  lex.AddSynonym("claim", Pos::kNoun, "insurance claim");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document out = RunOne(D1(), With("B.101", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(testing::MentionText(out, out.mentions[0]), "a insurance claim");
  EXPECT_EQ(SpansOf(out)[3], std::make_pair(std::size_t{9}, std::size_t{9}));
}

TEST(LexiconSubstitutionTest, KeepsCapitalization) {
  Lexicon lex;
  lex.AddSynonym("after", Pos::kOther, "following");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document out = RunOne(D1(), With("B.101", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(out.tokens[0].text, "Following");
}

TEST(LexiconSubstitutionTest, AdjectiveAntonymOnlyTouchesAdjectives) {
  Lexicon lex;
  lex.AddAntonym("valid", Pos::kAdj, "invalid");
  lex.AddAntonym("claim", Pos::kNoun, "counterclaim");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document d = MakeDocument("a", "The valid claim is filed .");
  Document out = RunOne(d, With("B.3", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), (std::vector<std::string>{"The", "invalid", "claim",
                                                  "is", "filed", "."}));
}

TEST(LexiconSubstitutionTest, AntonymEvenNeedsTwo) {
  Lexicon lex;
  lex.AddAntonym("registered", Pos::kVerb, "deregistered");
  AugmentContext ctx{&lex, nullptr, nullptr};
  AugmentOutcome out = RunOne(D1(), With("B.5", {{"k", std::int64_t{1}}}), ctx);
  EXPECT_TRUE(out.no_op);
  EXPECT_TRUE(SameContent(out.documents[0], D1()));
}

TEST(LexiconSubstitutionTest, AntonymEvenReplacesEvenCount) {
  Lexicon lex;
  lex.AddAntonym("registered", Pos::kVerb, "deregistered");
  lex.AddAntonym("examined", Pos::kVerb, "ignored");
  lex.AddAntonym("after", Pos::kOther, "before");
  AugmentContext ctx{&lex, nullptr, nullptr};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Document out = RunOne(D1(), With("B.5", {{"k", std::int64_t{5}}}), ctx, seed)
                       .documents[0];
    int changed = 0;
    for (std::size_t i = 0; i < out.tokens.size(); ++i) {
      changed += out.tokens[i].text != D1().tokens[i].text;
    }
    EXPECT_EQ(changed, 2);
  }
}

TEST(NegationRemovalTest, DeletesNegationAfterAuxiliary) {
  AugmentContext ctx;
  Document d = MakeDocument("n", "The invoice is not examined . | It does n't ship .");
  d.mentions = {{"M1", "Activity", 4, 4}};
  Document out = RunOne(d, With("B.6", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), (std::vector<std::string>{"The", "invoice", "is",
                                                  "examined", ".", "It", "does",
                                                  "ship", "."}));
  EXPECT_EQ(SpansOf(out), (SpanList{{3, 3}}));
}

TEST(NegationRemovalTest, D1IsNoOp) {
  AugmentContext ctx;
  AugmentOutcome out = RunOne(D1(), With("B.6", {{"p", 1.0}}), ctx);
  EXPECT_TRUE(out.no_op);
}

TEST(NegationRemovalTest, SoleMentionTokenIsKept) {
  AugmentContext ctx;
  Document d = MakeDocument("n", "it is not .");
  d.mentions = {{"M1", "Condition Specification", 2, 2}};
  Document out = RunOne(d, With("B.6", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_TRUE(SameContent(out, d));
}

TEST(AbbreviationTest, ExpandsAndContracts) {
  Lexicon lex;
  lex.AddAbbreviation("MPOO", "Manager , Post Office Operations");
  AugmentContext ctx{&lex, nullptr, nullptr};
  Document d = MakeDocument("a", "Send it to the MPOO .");
  d.mentions = {{"M1", "Actor", 3, 4}, {"M2", "Activity", 0, 0}};
  d.relations = {{"R1", "Actor Recipient", "M2", "M1"}};
  Document expanded = RunOne(d, With("B.82", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(testing::MentionText(expanded, expanded.mentions[0]),
            "the Manager , Post Office Operations");
  expanded.id = "a";
  Document back = RunOne(expanded, With("B.82", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_TRUE(SameContent(back, d));
}

TEST(MentionReplacementTest, SwapsWithOnlyCandidate) {
  AugmentContext ctx;
  Document out = RunOne(D1(), With("B.39", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), (std::vector<std::string>{"After", "it", "is",
                                                  "examined", ",", "a", "claim",
                                                  "is", "registered", "."}));
  EXPECT_EQ(SpansOf(out), (SpanList{{1, 1}, {3, 3}, {5, 6}, {8, 8}}));
}

TEST(MentionReplacementTest, LoneTypeIsNeverChanged) {
  AugmentContext ctx;
  Document d = D1();
  d.mentions.push_back({"M5", "Actor", 0, 0});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Document out = RunOne(d, With("B.39", {{"p", 1.0}}), ctx, seed).documents[0];
    EXPECT_EQ(out.tokens[out.mentions[4].start].text, "After");
  }
}

TEST(ShuffleTest, SegmentsKeepTheirTokens) {
  AugmentContext ctx;
  Corpus corpus = testing::LoadFixture("twenty_documents.json");
  for (const Document& d : corpus.documents) {
    Document out = RunOne(d, With("B.90", {{"p", 1.0}}), ctx, 7).documents[0];
    EXPECT_EQ(SpansOf(out), SpansOf(d));
    std::vector<Segment> segments = Segments(d);
    for (const Segment& s : segments) {
      std::vector<std::string> a, b;
      for (std::size_t i = s.span.start; i <= s.span.end; ++i) {
        a.push_back(d.tokens[i].text);
        b.push_back(out.tokens[i].text);
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
    }
  }
}

TEST(SentenceReorderingTest, SingleSentenceIsNoOp) {
  AugmentContext ctx;
  AugmentOutcome out = RunOne(D1(), DefaultConfig("B.88"), ctx);
  EXPECT_TRUE(out.no_op);
  EXPECT_TRUE(SameContent(out.documents[0], D1()));
}

TEST(SentenceReorderingTest, PermutesWholeSentences) {
  AugmentContext ctx;
  const Document d = testing::LoadFixture("three_sentences.json").documents[0];
  auto sentences = [](const Document& doc) {
    std::vector<std::vector<std::string>> out;
    for (const Span& s : SentenceSpans(doc)) {
      std::vector<std::string> words;
      for (std::size_t i = s.start; i <= s.end; ++i) {
        words.push_back(doc.tokens[i].text);
      }
      out.push_back(words);
    }
    return out;
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Document out = RunOne(d, DefaultConfig("B.88"), ctx, seed).documents[0];
    auto before = sentences(d), after = sentences(out);
    EXPECT_NE(before, after);
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    EXPECT_EQ(before, after);
  }
}

TEST(SentenceReorderingTest, DisplacementIsBounded) {
  AugmentContext ctx;
  Document d = MakeDocument("s", "a . | b . | c . | d . | e . | f .");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Document out =
        RunOne(d, With("B.88", {{"max_displacement", std::int64_t{1}}}), ctx, seed)
            .documents[0];
    for (std::size_t j = 0; j < 6; ++j) {
      int original = out.tokens[2 * j].text[0] - 'a';
      EXPECT_LE(std::abs(original - static_cast<int>(j)), 1);
    }
  }
}

TEST(SentenceConcatenationTest, RemovesPunctuationBetweenSentences) {
  AugmentContext ctx;
  Document d = MakeDocument(
      "c", "The clerk checks the invoice . | The clerk files it .");
  d.mentions = {{"M1", "Actor", 1, 1}, {"M2", "Actor", 7, 7}};
  Document out =
      RunOne(d, With("B.24", {{"n_merges", std::int64_t{1}}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), (std::vector<std::string>{"The", "clerk", "checks",
                                                  "the", "invoice", "The",
                                                  "clerk", "files", "it",
                                                  "."}));
  EXPECT_EQ(SentenceSpans(out).size(), 1u);
  EXPECT_EQ(SpansOf(out), (SpanList{{1, 1}, {6, 6}}));
}

TEST(SentenceConcatenationTest, WithoutPunctuationOnlyJoins) {
  AugmentContext ctx;
  Document d = MakeDocument("c", "first part | second part");
  Document out =
      RunOne(d, With("B.24", {{"n_merges", std::int64_t{1}}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), Texts(d));
  EXPECT_EQ(SentenceSpans(out).size(), 1u);
}

TEST(SubsequenceTest, ReplacementKeepsPosSequence) {
  const Lexicon& lex = testing::BundledLexicon();
  Corpus corpus = testing::LoadFixture("twenty_documents.json");
  AugmentContext ctx{&lex, nullptr, &corpus};
  std::size_t changed = 0;
  for (std::int64_t length = 1; length <= 3; ++length) {
    TechniqueConfig c = With("B.103", {{"p", 0.5}, {"length", length}});
    CorpusAugmentation result = AugmentCorpus(corpus, c, ctx, 3);
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      const Document& in = corpus.documents[i];
      const Document& out = result.synthetic.documents[i];
      // Free-text segments keep their coarse tag sequences.
      std::vector<Segment> a = Segments(in), b = Segments(out);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t s = 0; s < a.size(); ++s) {
        std::vector<Pos> ta, tb;
        for (std::size_t k = a[s].span.start; k <= a[s].span.end; ++k) {
          ta.push_back(lex.CoarsePos(in.tokens[k].text));
        }
        for (std::size_t k = b[s].span.start; k <= b[s].span.end; ++k) {
          tb.push_back(lex.CoarsePos(out.tokens[k].text));
        }
        EXPECT_EQ(ta, tb);
      }
      changed += Texts(in) != Texts(out);
    }
  }
  EXPECT_GT(changed, 0u);
}

TEST(SubsequenceTest, MissingTagSequenceLeavesSite) {
  Lexicon lex;
  lex.SetPos("After", Pos::kAdv);
  lex.SetPos("quickly", Pos::kAdv);
  Corpus donor = CorpusOf({MakeDocument("donor", "quickly")});
  AugmentContext ctx{&lex, nullptr, &donor};
  Document out = RunOne(D1(), With("B.103", {{"p", 1.0}}), ctx).documents[0];
  std::vector<std::string> expected = Texts(D1());
  expected[0] = "quickly";  // the only site whose tags the donor covers
  EXPECT_EQ(Texts(out), expected);
}

// Rewrites "a claim" to `claim_rewrite`; leaves everything else unchanged.
class ClaimProvider : public ParaphraseProvider {
 public:
  explicit ClaimProvider(std::string claim_rewrite)
      : claim_rewrite_(std::move(claim_rewrite)) {}
  std::vector<std::string> Rewrite(const std::vector<std::string>& texts,
                                   const RewriteMode&, std::uint64_t) override {
    std::vector<std::string> out = texts;
    for (std::string& t : out) {
      if (t == "a claim") t = claim_rewrite_;
    }
    return out;
  }

 private:
  std::string claim_rewrite_;
};

TEST(ParaphraseTest, RewritesMentionInPlace) {
  ClaimProvider provider("the claim");
  AugmentContext ctx{nullptr, &provider, nullptr};
  Document out = RunOne(D1(), DefaultConfig("B.8"), ctx).documents[0];
  EXPECT_EQ(SpansOf(out), SpansOf(D1()));
  EXPECT_EQ(out.tokens[1].text, "the");
}

TEST(ParaphraseTest, EmptyRewriteKeepsMention) {
  ClaimProvider provider("");
  AugmentContext ctx{nullptr, &provider, nullptr};
  Document out = RunOne(D1(), DefaultConfig("B.62"), ctx).documents[0];
  EXPECT_TRUE(SameContent(out, D1()));
}

TEST(ModelReplacementTest, FixedWordReplacesEligibleTokens) {
  FixedWordProvider foo("foo");
  AugmentContext ctx{nullptr, &foo, nullptr};
  Document out = RunOne(D1(), With("B.106", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_EQ(Texts(out), (std::vector<std::string>{"foo", "a", "claim", "foo",
                                                  "registered", ",", "it", "foo",
                                                  "examined", "."}));
  Document all = RunOne(D1(), With("B.106", {{"p", 1.0}, {"in_mentions", kTrue}}),
                     ctx)
                     .documents[0];
  EXPECT_EQ(Texts(all), (std::vector<std::string>{"foo", "foo", "foo", "foo",
                                                  "foo", ",", "foo", "foo",
                                                  "foo", "."}));
}

TEST(ModelReplacementTest, IdentityProviderChangesNothing) {
  IdentityProvider identity;
  AugmentContext ctx{nullptr, &identity, nullptr};
  Document out = RunOne(D1(), With("B.26", {{"p", 1.0}}), ctx).documents[0];
  EXPECT_TRUE(SameContent(out, D1()));
}

TEST(ModelReplacementTest, StubIsDeterministic) {
  StubProvider stub(testing::BundledLexicon());
  AugmentContext ctx{nullptr, &stub, nullptr};
  TechniqueConfig c = With("B.106", {{"p", 0.7}}, 3);
  EXPECT_EQ(RunOne(D1(), c, ctx, 5).documents, RunOne(D1(), c, ctx, 5).documents);
}

// ---------------------------------------------------------------------------
// Corpus-level behaviour

TEST(AugmentCorpusTest, WorkerCountDoesNotMatter) {
  Corpus corpus = testing::LoadFixture("twenty_documents.json");
  StubProvider stub(testing::BundledLexicon());
  AugmentContext ctx{&testing::BundledLexicon(), &stub, nullptr};
  for (const std::string& id : CatalogueTechniqueIds()) {
    TechniqueConfig c = DefaultConfig(id);
    c.n_aug = 2;
    auto one = AugmentCorpus(corpus, c, ctx, 77, 1);
    auto many = AugmentCorpus(corpus, c, ctx, 77, 6);
    EXPECT_EQ(SerializeCorpus(one.synthetic), SerializeCorpus(many.synthetic))
        << id;
    EXPECT_EQ(one.no_op_documents, many.no_op_documents);
    ASSERT_EQ(one.synthetic.documents.size(), 2 * corpus.documents.size());
    EXPECT_EQ(one.synthetic.documents[0].id, corpus.documents[0].id + "-aug1");
    EXPECT_EQ(one.synthetic.documents[1].id, corpus.documents[0].id + "-aug2");
  }
}

TEST(AugmentCorpusTest, SeedsDifferPerReplica) {
  Corpus corpus = testing::LoadFixture("twenty_documents.json");
  AugmentContext ctx;
  TechniqueConfig c = With("B.79", {{"p", 0.5}}, 2);
  auto out = AugmentCorpus(corpus, c, ctx, 1);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < out.synthetic.documents.size(); i += 2) {
    differ += Texts(out.synthetic.documents[i]) !=
              Texts(out.synthetic.documents[i + 1]);
  }
  EXPECT_GT(differ, 0u);
}

TEST(AugmentCorpusTest, MergeKeepsOriginalsFirst) {
  Corpus corpus = CorpusOf({D1()});
  AugmentContext ctx;
  auto out = AugmentCorpus(corpus, IdentityConfig("B.79"), ctx, 1);
  Corpus merged = MergeCorpora(corpus, out.synthetic);
  ASSERT_EQ(merged.documents.size(), 2u);
  EXPECT_EQ(merged.documents[0].id, "D1");
  EXPECT_EQ(merged.documents[1].id, "D1-aug1");
  EXPECT_TRUE(ValidateCorpus(merged).empty());
}

TEST(AugmentCorpusTest, NoOpDocumentsAreListed) {
  Corpus corpus = CorpusOf({D1(), testing::LoadFixture("three_sentences.json")
                                      .documents[0]});
  AugmentContext ctx;
  auto out = AugmentCorpus(corpus, DefaultConfig("B.88"), ctx, 1);
  EXPECT_EQ(out.no_op_documents, std::vector<std::string>{"D1"});
}

}  // namespace
}  // namespace procaug
