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

// Annotated-corpus data model: pre-tokenized documents with typed,
// token-disjoint mention spans and typed relations between mentions.

#ifndef PROCAUG_CORPUS_H_
#define PROCAUG_CORPUS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace procaug {

struct Token {
  std::string text;
  int sentence = 0;

  bool operator==(const Token&) const = default;
};

// A contiguous, sentence-internal span of tokens. Both ends are inclusive.
struct Mention {
  std::string id;
  std::string type;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool Contains(std::size_t index) const {
    return index >= start && index <= end;
  }
  bool operator==(const Mention&) const = default;
};

struct Relation {
  std::string id;
  std::string type;
  std::string head;
  std::string tail;

  bool operator==(const Relation&) const = default;
};

struct Document {
  std::string id;
  std::vector<Token> tokens;
  std::vector<Mention> mentions;
  std::vector<Relation> relations;

  // Returns nullptr when no mention has this id.
  const Mention* FindMention(std::string_view mention_id) const;
  // Index of the mention covering `token`, or -1.
  int MentionAt(std::size_t token) const;

  bool operator==(const Document&) const = default;
};

std::vector<std::string> DefaultMentionTypes();
std::vector<std::string> DefaultRelationTypes();

struct Corpus {
  std::vector<std::string> mention_types = DefaultMentionTypes();
  std::vector<std::string> relation_types = DefaultRelationTypes();
  std::vector<Document> documents;

  bool operator==(const Corpus&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string document_id, std::string rule,
                  const std::string& message);
  const std::string& document_id() const { return document_id_; }
  const std::string& rule() const { return rule_; }

 private:
  std::string document_id_;
  std::string rule_;
};

// Rule names reported by ValidateDocument / ValidateCorpus.
namespace rules {
inline constexpr std::string_view kEmptyToken = "empty-token";
inline constexpr std::string_view kTokenWhitespace = "token-whitespace";
inline constexpr std::string_view kSentenceOrder = "sentence-order";
inline constexpr std::string_view kSpanOutOfRange = "span-out-of-range";
inline constexpr std::string_view kSpanCrossesSentence =
    "span-crosses-sentence";
inline constexpr std::string_view kOverlap = "overlap";
inline constexpr std::string_view kDuplicateMentionId = "duplicate-mention-id";
inline constexpr std::string_view kDuplicateRelationId =
    "duplicate-relation-id";
inline constexpr std::string_view kDanglingEndpoint = "dangling-endpoint";
inline constexpr std::string_view kSelfRelation = "self-relation";
inline constexpr std::string_view kDuplicateDocumentId =
    "duplicate-document-id";
inline constexpr std::string_view kUnknownMentionType = "unknown-mention-type";
inline constexpr std::string_view kUnknownRelationType =
    "unknown-relation-type";
}  // namespace rules

struct Violation {
  std::string rule;
  std::string element;  // offending token index, mention id or relation id
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Checks every structural invariant of a single document. Type inventories
// are a corpus-level concern and are checked by ValidateCorpus.
std::vector<Violation> ValidateDocument(const Document& document);

// Document-level checks for every document plus id uniqueness and type
// inventory membership. Violations of document `d` carry `d.id` in element.
std::vector<Violation> ValidateCorpus(const Corpus& corpus);

// Parses the JSON corpus format and validates the result. Throws ParseError
// on malformed input and ValidationError on the first invariant violation.
Corpus ParseCorpus(std::string_view raw);

// Canonical form: sorted keys, compact, documents in input order, trailing
// newline.
std::string SerializeCorpus(const Corpus& corpus);

Corpus ReadCorpusFile(const std::string& path);
// Writes to a sibling temporary file and renames it into place.
void WriteCorpusFile(const Corpus& corpus, const std::string& path);

// Strips a trailing "-augK" replica suffix, yielding the id of the original
// document a synthetic one was derived from.
std::string ProvenanceId(std::string_view document_id);

}  // namespace procaug

#endif  // PROCAUG_CORPUS_H_
