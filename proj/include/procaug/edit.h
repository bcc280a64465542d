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

// Token-level edits over annotated documents.
//
// Every edit either yields a valid document with mention spans, sentence
// indices and relation endpoints remapped, or is rejected and leaves the
// document untouched. Mentions are never dropped, so relations never dangle.
//
// Span rules:
//  - Insertion before token p grows a mention [s,e] iff s < p <= e. Insertion
//    at a mention boundary only shifts it.
//  - Deletion shrinks mentions; a deletion that would empty a mention is
//    rejected as a whole.
//  - A replaced range contained in one mention stays inside that mention. A
//    replaced range that partially overlaps or swallows a mention is rejected.
//  - Swaps exchange token texts only, and only within the free region or
//    within a single mention.

#ifndef PROCAUG_EDIT_H_
#define PROCAUG_EDIT_H_

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "procaug/corpus.h"

namespace procaug {

// Which sentence inserted tokens join when the insertion point sits on a
// sentence boundary. Away from a boundary both policies agree.
enum class SentencePolicy {
  kFollowing,  // sentence of the token after the insertion point
  kPreceding,  // sentence of the token before the insertion point
};

struct InsertTokens {
  std::size_t position = 0;  // inserted before this token; may equal size
  std::vector<std::string> texts;
  SentencePolicy sentence_policy = SentencePolicy::kFollowing;
};

struct DeleteTokens {
  std::set<std::size_t> positions;
};

struct ReplaceSpan {
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // inclusive
  std::vector<std::string> texts;
};

struct SwapTokens {
  std::size_t first = 0;
  std::size_t second = 0;
};

// New sentence j holds the tokens of old sentence `order[j]`, where sentences
// are numbered by order of appearance. Sentence labels keep their sorted
// positions, so the identity permutation is a no-op.
struct PermuteSentences {
  std::vector<std::size_t> order;
};

// Joins the sentence at ordinal `first` with the one after it. A trailing
// token of the first sentence that is in the punctuation set is deleted,
// unless it belongs to a mention.
struct MergeSentences {
  std::size_t first = 0;
};

using Edit = std::variant<InsertTokens, DeleteTokens, ReplaceSpan, SwapTokens,
                          PermuteSentences, MergeSentences>;

// Sentence-final tokens stripped by MergeSentences.
const std::set<std::string>& MergePunctuation();

// Thrown for edits whose indices are out of range or whose arguments are
// malformed (empty replacement, non-bijective permutation, tokens with
// whitespace). Structurally impossible edits are rejected instead.
class EditError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RejectedEdit {
  std::size_t edit_index = 0;
  std::string reason;
  std::vector<std::string> mention_ids;
};

struct RemapReport {
  // old token index -> new token index; nullopt for removed tokens. Strictly
  // increasing over surviving tokens for every edit kind except
  // PermuteSentences.
  std::vector<std::optional<std::size_t>> index_map;
  std::vector<std::string> mentions_shrunk;
  std::vector<RejectedEdit> edits_rejected;
};

std::pair<Document, RemapReport> ApplyEdit(const Document& document,
                                           const Edit& edit);

// Left fold of ApplyEdit. Indices of each edit refer to the document produced
// by the edits before it; rejected edits are skipped and reported with their
// position in `edits`.
std::pair<Document, RemapReport> ApplyEdits(const Document& document,
                                            const std::vector<Edit>& edits);

// An inclusive token range.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool operator==(const Span&) const = default;
};

// Maximal token ranges covered by no mention. Together with the mention spans
// they partition [0, token count).
std::vector<Span> FreeSpans(const Document& document);

struct Segment {
  Span span;
  int mention = -1;  // index into document.mentions, or -1 for free text
};

// Mention spans interleaved with the free spans, the latter additionally cut
// at sentence boundaries. Sorted by position.
std::vector<Segment> Segments(const Document& document);

// Distinct sentence labels in order of appearance, and the token range of
// each sentence.
std::vector<Span> SentenceSpans(const Document& document);

}  // namespace procaug

#endif  // PROCAUG_EDIT_H_
