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

// Annotation-preserving augmentation techniques.
//
// Fifteen operations implement the nineteen catalogued techniques; several
// catalogue ids are the same operation with some parameters pinned (for
// example B.101, B.3 and B.5 are lexicon_substitution in its three modes).
// Both the catalogue ids and the operation names are accepted wherever a
// technique id is expected.
//
// All changes go through the edit engine, so every synthetic document keeps
// its mentions (possibly with changed extent) and all of its relations.

#ifndef PROCAUG_AUGMENTERS_H_
#define PROCAUG_AUGMENTERS_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "procaug/corpus.h"
#include "procaug/lexicon.h"
#include "procaug/params.h"
#include "procaug/provider.h"

namespace procaug {

namespace ops {
inline constexpr std::string_view kRandomTokenDeletion = "random_token_deletion";
inline constexpr std::string_view kRandomTokenInsertion =
    "random_token_insertion";
inline constexpr std::string_view kRandomTokenSwap = "random_token_swap";
inline constexpr std::string_view kFillerWordInsertion = "filler_word_insertion";
inline constexpr std::string_view kSynonymInsertion = "synonym_insertion";
inline constexpr std::string_view kLexiconSubstitution = "lexicon_substitution";
inline constexpr std::string_view kAuxiliaryNegationRemoval =
    "auxiliary_negation_removal";
inline constexpr std::string_view kAbbreviationToggle = "abbreviation_toggle";
inline constexpr std::string_view kMentionReplacement = "mention_replacement";
inline constexpr std::string_view kShuffleWithinSegments =
    "shuffle_within_segments";
inline constexpr std::string_view kSentenceReordering = "sentence_reordering";
inline constexpr std::string_view kSentenceConcatenation =
    "sentence_concatenation";
inline constexpr std::string_view kSubsequenceSubstitution =
    "subsequence_substitution";
inline constexpr std::string_view kParaphraseSpans = "paraphrase_spans";
inline constexpr std::string_view kModelWordReplacement =
    "model_word_replacement";
}  // namespace ops

struct Technique {
  std::string id;         // "B.79", "random_insert" or an operation name
  std::string operation;  // one of ops::*
  std::string name;       // human-readable catalogue name
  ParamSpace space;       // tunable dimensions, including n_aug
  ParamMap fixed;         // parameters pinned by this id
  bool preserves_direction = true;
  bool needs_lexicon = false;
  bool needs_provider = false;
};

class UnknownTechniqueError : public std::invalid_argument {
 public:
  explicit UnknownTechniqueError(const std::string& id)
      : std::invalid_argument("unknown technique '" + id + "'") {}
};

// Every registered technique: the nineteen catalogue ids followed by the
// fifteen operation names.
const std::vector<Technique>& Techniques();
const Technique& FindTechnique(std::string_view id);
std::vector<std::string> CatalogueTechniqueIds();
std::vector<std::string> OperationNames();

// Defaults for every tunable dimension plus the pinned parameters.
TechniqueConfig DefaultConfig(std::string_view id);
// A configuration under which the technique returns its input unchanged.
// paraphrase_spans has no such parameter setting; with it the identity case
// is an identity provider.
TechniqueConfig IdentityConfig(std::string_view id);
// Completes `config` with defaults and pinned values and checks every value
// against the technique's space. Throws ConfigError or UnknownTechniqueError.
TechniqueConfig ResolveConfig(const TechniqueConfig& config);
// Maps a full point of the technique's space (n_aug included) to a config.
TechniqueConfig ConfigFromPoint(std::string_view id, const ParamMap& point);
ParamMap PointFromConfig(const TechniqueConfig& config);

struct AugmentContext {
  const Lexicon* lexicon = nullptr;
  ParaphraseProvider* provider = nullptr;
  // Training documents: vocabulary for random insertion and donor
  // subsequences for subsequence substitution. The augmented document itself
  // is used when absent.
  const Corpus* donor = nullptr;
};

struct AugmentOutcome {
  std::vector<Document> documents;  // n_aug replicas, ids "<id>-augK"
  bool no_op = false;  // the technique found nothing to act on
  std::vector<std::string> warnings;
};

// Produces config.n_aug synthetic documents. Replica K (1-based) draws from
// its own stream seeded by hash(seed, document id, technique id, K), so the
// result is a pure function of the arguments.
AugmentOutcome Augment(const Document& document, const TechniqueConfig& config,
                       const AugmentContext& context, std::uint64_t seed);

struct CorpusAugmentation {
  Corpus synthetic;  // synthetic documents only, grouped by original
  std::vector<std::string> no_op_documents;
  std::vector<std::string> warnings;
};

// Augments every document, in parallel across `workers` threads. Output is
// independent of the worker count.
CorpusAugmentation AugmentCorpus(const Corpus& corpus,
                                 const TechniqueConfig& config,
                                 const AugmentContext& context,
                                 std::uint64_t seed, int workers = 1);

// Originals followed by their synthetics.
Corpus MergeCorpora(const Corpus& originals, const Corpus& synthetic);

}  // namespace procaug

#endif  // PROCAUG_AUGMENTERS_H_
