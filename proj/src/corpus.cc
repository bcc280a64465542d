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

#include "procaug/corpus.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "procaug/util.h"

namespace procaug {

using nlohmann::json;

const Mention* Document::FindMention(std::string_view mention_id) const {
  for (const Mention& m : mentions) {
    if (m.id == mention_id) return &m;
  }
  return nullptr;
}

int Document::MentionAt(std::size_t token) const {
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    if (mentions[i].Contains(token)) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> DefaultMentionTypes() {
  return {"Actor",
          "Activity",
          "Activity Data",
          "Further Specification",
          "XOR Gateway",
          "AND Gateway",
          "Condition Specification"};
}

std::vector<std::string> DefaultRelationTypes() {
  return {"Flow",
          "Uses",
          "Actor Performer",
          "Actor Recipient",
          "Further Specification",
          "Same Gateway"};
}

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : std::runtime_error("parse error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::string document_id, std::string rule,
                                 const std::string& message)
    : std::runtime_error("document '" + document_id + "': " + rule + ": " +
                         message),
      document_id_(std::move(document_id)),
      rule_(std::move(rule)) {}

std::vector<Violation> ValidateDocument(const Document& d) {
  std::vector<Violation> out;
  auto add = [&out](std::string_view rule, std::string element,
                    std::string message) {
    out.push_back({std::string(rule), std::move(element), std::move(message)});
  };

  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    const Token& t = d.tokens[i];
    if (t.text.empty()) {
      add(rules::kEmptyToken, std::to_string(i), "token text is empty");
    } else if (HasWhitespace(t.text)) {
      add(rules::kTokenWhitespace, std::to_string(i),
          "token text contains whitespace");
    }
    if (t.sentence < 0) {
      add(rules::kSentenceOrder, std::to_string(i),
          "sentence index is negative");
    } else if (i > 0 && t.sentence < d.tokens[i - 1].sentence) {
      add(rules::kSentenceOrder, std::to_string(i),
          "sentence index decreases");
    }
  }

  std::unordered_set<std::string> mention_ids;
  std::vector<const Mention*> in_range;
  for (const Mention& m : d.mentions) {
    if (!mention_ids.insert(m.id).second) {
      add(rules::kDuplicateMentionId, m.id, "mention id is not unique");
    }
    if (m.start > m.end || m.end >= d.tokens.size()) {
      add(rules::kSpanOutOfRange, m.id, "span out of range");
      continue;
    }
    in_range.push_back(&m);
    for (std::size_t i = m.start + 1; i <= m.end; ++i) {
      if (d.tokens[i].sentence != d.tokens[m.start].sentence) {
        add(rules::kSpanCrossesSentence, m.id,
            "span crosses a sentence boundary");
        break;
      }
    }
  }
  std::sort(in_range.begin(), in_range.end(),
            [](const Mention* a, const Mention* b) {
              return a->start != b->start ? a->start < b->start
                                          : a->end < b->end;
            });
  for (std::size_t i = 1; i < in_range.size(); ++i) {
    if (in_range[i]->start <= in_range[i - 1]->end) {
      add(rules::kOverlap, in_range[i]->id,
          "overlaps mention " + in_range[i - 1]->id);
    }
  }

  std::unordered_set<std::string> relation_ids;
  for (const Relation& r : d.relations) {
    if (!relation_ids.insert(r.id).second) {
      add(rules::kDuplicateRelationId, r.id, "relation id is not unique");
    }
    for (const std::string* endpoint : {&r.head, &r.tail}) {
      if (!mention_ids.contains(*endpoint)) {
        add(rules::kDanglingEndpoint, r.id,
            "endpoint '" + *endpoint + "' names no mention");
      }
    }
    if (r.head == r.tail) {
      add(rules::kSelfRelation, r.id, "head and tail are the same mention");
    }
  }
  return out;
}

std::vector<Violation> ValidateCorpus(const Corpus& corpus) {
  std::vector<Violation> out;
  const std::set<std::string> mention_types(corpus.mention_types.begin(),
                                            corpus.mention_types.end());
  const std::set<std::string> relation_types(corpus.relation_types.begin(),
                                             corpus.relation_types.end());
  std::unordered_set<std::string> ids;
  for (const Document& d : corpus.documents) {
    if (!ids.insert(d.id).second) {
      out.push_back({std::string(rules::kDuplicateDocumentId), d.id,
                     "document id is not unique"});
    }
    for (Violation& v : ValidateDocument(d)) {
      v.element = d.id + "/" + v.element;
      out.push_back(std::move(v));
    }
    for (const Mention& m : d.mentions) {
      if (!mention_types.contains(m.type)) {
        out.push_back({std::string(rules::kUnknownMentionType),
                       d.id + "/" + m.id, "unknown mention type '" + m.type +
                                              "'"});
      }
    }
    for (const Relation& r : d.relations) {
      if (!relation_types.contains(r.type)) {
        out.push_back({std::string(rules::kUnknownRelationType),
                       d.id + "/" + r.id, "unknown relation type '" + r.type +
                                              "'"});
      }
    }
  }
  return out;
}

namespace {

void LineColumn(std::string_view raw, std::size_t byte, std::size_t& line,
                std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < raw.size(); ++i) {
    if (raw[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

// Structural access with errors that name the path being read.
const json& Field(const json& object, const char* key, const std::string& at) {
  if (!object.is_object()) throw std::runtime_error(at + " is not an object");
  auto it = object.find(key);
  if (it == object.end()) {
    throw std::runtime_error(at + " lacks field \"" + key + "\"");
  }
  return *it;
}

std::string String(const json& value, const std::string& at) {
  if (!value.is_string()) throw std::runtime_error(at + " is not a string");
  return value.get<std::string>();
}

std::int64_t Integer(const json& value, const std::string& at) {
  if (!value.is_number_integer()) {
    throw std::runtime_error(at + " is not an integer");
  }
  return value.get<std::int64_t>();
}

std::size_t Index(const json& value, const std::string& at) {
  const std::int64_t v = Integer(value, at);
  if (v < 0) throw std::runtime_error(at + " is negative");
  return static_cast<std::size_t>(v);
}

const json& Array(const json& value, const std::string& at) {
  if (!value.is_array()) throw std::runtime_error(at + " is not an array");
  return value;
}

std::vector<std::string> StringList(const json& value, const std::string& at) {
  std::vector<std::string> out;
  for (const json& v : Array(value, at)) out.push_back(String(v, at + "[]"));
  return out;
}

Document DocumentFromJson(const json& j, const std::string& at) {
  Document d;
  d.id = String(Field(j, "id", at), at + ".id");
  const std::string where = at + "(" + d.id + ")";
  for (const json& t : Array(Field(j, "tokens", where), where + ".tokens")) {
    const std::string tat = where + ".tokens[]";
    d.tokens.push_back(
        {String(Field(t, "text", tat), tat + ".text"),
         static_cast<int>(Integer(Field(t, "sentence", tat), tat + ".sentence"))});
  }
  for (const json& m :
       Array(Field(j, "mentions", where), where + ".mentions")) {
    const std::string mat = where + ".mentions[]";
    d.mentions.push_back({String(Field(m, "id", mat), mat + ".id"),
                          String(Field(m, "type", mat), mat + ".type"),
                          Index(Field(m, "start", mat), mat + ".start"),
                          Index(Field(m, "end", mat), mat + ".end")});
  }
  for (const json& r :
       Array(Field(j, "relations", where), where + ".relations")) {
    const std::string rat = where + ".relations[]";
    d.relations.push_back({String(Field(r, "id", rat), rat + ".id"),
                           String(Field(r, "type", rat), rat + ".type"),
                           String(Field(r, "head", rat), rat + ".head"),
                           String(Field(r, "tail", rat), rat + ".tail")});
  }
  return d;
}

json DocumentToJson(const Document& d) {
  json tokens = json::array();
  for (const Token& t : d.tokens) {
    tokens.push_back({{"text", t.text}, {"sentence", t.sentence}});
  }
  json mentions = json::array();
  for (const Mention& m : d.mentions) {
    mentions.push_back(
        {{"id", m.id}, {"type", m.type}, {"start", m.start}, {"end", m.end}});
  }
  json relations = json::array();
  for (const Relation& r : d.relations) {
    relations.push_back(
        {{"id", r.id}, {"type", r.type}, {"head", r.head}, {"tail", r.tail}});
  }
  return {{"id", d.id},
          {"tokens", std::move(tokens)},
          {"mentions", std::move(mentions)},
          {"relations", std::move(relations)}};
}

}  // namespace

Corpus ParseCorpus(std::string_view raw) {
  json root;
  try {
    root = json::parse(raw.begin(), raw.end());
  } catch (const json::parse_error& e) {
    std::size_t line, column;
    LineColumn(raw, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw ParseError(e.what(), line, column);
  }

  Corpus corpus;
  try {
    if (!root.is_object()) throw std::runtime_error("top level is not an object");
    if (root.contains("mention_types")) {
      corpus.mention_types = StringList(root["mention_types"], "mention_types");
    }
    if (root.contains("relation_types")) {
      corpus.relation_types =
          StringList(root["relation_types"], "relation_types");
    }
    const json& docs = Array(Field(root, "documents", "corpus"), "documents");
    for (std::size_t i = 0; i < docs.size(); ++i) {
      corpus.documents.push_back(
          DocumentFromJson(docs[i], "documents[" + std::to_string(i) + "]"));
    }
  } catch (const std::runtime_error& e) {
    // Schema errors have no byte offset once the DOM is built.
    throw ParseError(e.what(), 0, 0);
  }

  for (const Document& d : corpus.documents) {
    std::vector<Violation> violations = ValidateDocument(d);
    if (!violations.empty()) {
      throw ValidationError(d.id, violations.front().rule,
                            violations.front().element + ": " +
                                violations.front().message);
    }
  }
  std::vector<Violation> violations = ValidateCorpus(corpus);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw ValidationError(v.element.substr(0, v.element.find('/')), v.rule,
                          v.message);
  }
  return corpus;
}

std::string SerializeCorpus(const Corpus& corpus) {
  json docs = json::array();
  for (const Document& d : corpus.documents) docs.push_back(DocumentToJson(d));
  json root = {{"mention_types", corpus.mention_types},
               {"relation_types", corpus.relation_types},
               {"documents", std::move(docs)}};
  return root.dump() + "\n";
}

Corpus ReadCorpusFile(const std::string& path) {
  return ParseCorpus(ReadFile(path));
}

void WriteCorpusFile(const Corpus& corpus, const std::string& path) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

std::string ProvenanceId(std::string_view document_id) {
  const std::size_t pos = document_id.rfind("-aug");
  if (pos == std::string_view::npos || pos + 4 == document_id.size()) {
    return std::string(document_id);
  }
  for (std::size_t i = pos + 4; i < document_id.size(); ++i) {
    if (document_id[i] < '0' || document_id[i] > '9') {
      return std::string(document_id);
    }
  }
  return std::string(document_id.substr(0, pos));
}

}  // namespace procaug
