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

#include "procaug/lexicon.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>

#include "procaug/util.h"

namespace procaug {

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return "NOUN";
    case Pos::kVerb:
      return "VERB";
    case Pos::kAdj:
      return "ADJ";
    case Pos::kAdv:
      return "ADV";
    case Pos::kOther:
      return "OTHER";
  }
  return "OTHER";
}

Pos ParsePos(std::string_view name) {
  if (name == "NOUN") return Pos::kNoun;
  if (name == "VERB") return Pos::kVerb;
  if (name == "ADJ") return Pos::kAdj;
  if (name == "ADV") return Pos::kAdv;
  if (name == "OTHER") return Pos::kOther;
  throw std::invalid_argument("unknown POS tag '" + std::string(name) + "'");
}

LexiconError::LexiconError(const std::string& file, std::size_t line,
                           const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + message) {}

namespace {

const std::vector<std::string>& EmptyList() {
  static const std::vector<std::string> kEmpty;
  return kEmpty;
}

void AddUnique(std::vector<std::string>& list, std::string value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) {
    list.push_back(std::move(value));
  }
}

std::string NormalizePhrase(std::string_view phrase) {
  return Join(SplitWords(phrase), " ");
}

}  // namespace

void Lexicon::AddSynonym(std::string_view surface, Pos pos,
                         std::string_view target) {
  const std::string key = ToLower(Trim(surface));
  const std::string phrase = NormalizePhrase(target);
  if (key.empty() || phrase.empty()) {
    throw std::invalid_argument("empty surface or target");
  }
  if (ToLower(phrase) == key) {
    throw std::invalid_argument("'" + key + "' lists itself as a synonym");
  }
  AddUnique(entries_[{key, pos}].synonyms, phrase);
  pos_.emplace(key, pos);
}

void Lexicon::AddAntonym(std::string_view surface, Pos pos,
                         std::string_view target) {
  const std::string key = ToLower(Trim(surface));
  const std::string phrase = NormalizePhrase(target);
  if (key.empty() || phrase.empty()) {
    throw std::invalid_argument("empty surface or target");
  }
  if (ToLower(phrase) == key) {
    throw std::invalid_argument("'" + key + "' lists itself as an antonym");
  }
  AddUnique(entries_[{key, pos}].antonyms, phrase);
  pos_.emplace(key, pos);
}

void Lexicon::SetPos(std::string_view surface, Pos pos) {
  const std::string key = ToLower(Trim(surface));
  if (key.empty()) throw std::invalid_argument("empty surface");
  pos_.emplace(key, pos);
}

void Lexicon::AddAbbreviation(std::string_view short_form,
                              std::string_view long_form) {
  const std::string abbreviation(Trim(short_form));
  std::vector<std::string> expansion = SplitWords(long_form);
  if (abbreviation.empty() || HasWhitespace(abbreviation) ||
      expansion.empty()) {
    throw std::invalid_argument("malformed abbreviation pair");
  }
  if (expansions_.contains(abbreviation)) {
    throw std::invalid_argument("duplicate short form '" + abbreviation + "'");
  }
  if (contractions_.contains(expansion)) {
    throw std::invalid_argument("duplicate long form '" +
                                Join(expansion, " ") + "'");
  }
  contractions_.emplace(expansion, abbreviation);
  expansions_.emplace(abbreviation, std::move(expansion));
}

void Lexicon::AddFiller(std::string_view phrase) {
  std::string normalized = NormalizePhrase(phrase);
  if (normalized.empty()) throw std::invalid_argument("empty filler phrase");
  AddUnique(fillers_, std::move(normalized));
}

void Lexicon::AddStopword(std::string_view word) {
  const std::string key = ToLower(Trim(word));
  if (!key.empty()) stopwords_.insert(key);
}

Pos Lexicon::CoarsePos(std::string_view token) const {
  auto it = pos_.find(ToLower(token));
  return it == pos_.end() ? Pos::kOther : it->second;
}

const LexicalEntry* Lexicon::Find(std::string_view token) const {
  const std::string key = ToLower(token);
  auto pos = pos_.find(key);
  if (pos == pos_.end()) return nullptr;
  auto it = entries_.find({key, pos->second});
  return it == entries_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& Lexicon::Synonyms(
    std::string_view token) const {
  const LexicalEntry* entry = Find(token);
  return entry ? entry->synonyms : EmptyList();
}

const std::vector<std::string>& Lexicon::Antonyms(
    std::string_view token) const {
  const LexicalEntry* entry = Find(token);
  return entry ? entry->antonyms : EmptyList();
}

bool Lexicon::IsStopword(std::string_view token) const {
  return stopwords_.contains(ToLower(token));
}

namespace {

// Calls `row(fields, line_number)` for each non-blank, non-comment line.
void ForEachRow(
    const std::string& path,
    const std::function<void(const std::vector<std::string>&, std::size_t)>&
        row) {
  std::ifstream in(path);
  if (!in) throw LexiconError(path, 0, "cannot open file");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t begin = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', begin);
      fields.emplace_back(Trim(std::string_view(line).substr(
          begin, tab == std::string::npos ? std::string::npos : tab - begin)));
      if (tab == std::string::npos) break;
      begin = tab + 1;
    }
    try {
      row(fields, number);
    } catch (const LexiconError&) {
      throw;
    } catch (const std::exception& e) {
      throw LexiconError(path, number, e.what());
    }
  }
}

}  // namespace

Lexicon LoadLexicon(const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path root(directory);
  if (!fs::is_directory(root)) {
    throw LexiconError(directory, 0, "not a lexicon directory");
  }
  Lexicon lexicon;

  const std::string entries = (root / "lexicon.tsv").string();
  if (fs::exists(entries)) {
    ForEachRow(entries, [&](const std::vector<std::string>& f, std::size_t) {
      if (f.size() == 2) {
        lexicon.SetPos(f[0], ParsePos(f[1]));
      } else if (f.size() == 4 && f[2] == "syn") {
        lexicon.AddSynonym(f[0], ParsePos(f[1]), f[3]);
      } else if (f.size() == 4 && f[2] == "ant") {
        lexicon.AddAntonym(f[0], ParsePos(f[1]), f[3]);
      } else {
        throw std::invalid_argument(
            "expected surface<TAB>POS[<TAB>syn|ant<TAB>target]");
      }
    });
  }

  const std::string abbreviations = (root / "abbreviations.tsv").string();
  if (fs::exists(abbreviations)) {
    ForEachRow(abbreviations,
               [&](const std::vector<std::string>& f, std::size_t) {
                 if (f.size() != 2) {
                   throw std::invalid_argument("expected short<TAB>long");
                 }
                 lexicon.AddAbbreviation(f[0], f[1]);
               });
  }

  const std::string fillers = (root / "fillers.txt").string();
  if (!fs::exists(fillers)) throw LexiconError(fillers, 0, "missing file");
  ForEachRow(fillers, [&](const std::vector<std::string>& f, std::size_t) {
    lexicon.AddFiller(Join(f, " "));
  });
  if (lexicon.fillers().empty()) {
    throw LexiconError(fillers, 0, "filler list is empty");
  }

  const std::string stopwords = (root / "stopwords.txt").string();
  if (fs::exists(stopwords)) {
    ForEachRow(stopwords, [&](const std::vector<std::string>& f, std::size_t) {
      if (f.size() != 1) throw std::invalid_argument("expected one token");
      lexicon.AddStopword(f[0]);
    });
  }
  return lexicon;
}

std::string BundledLexiconDirectory() {
  return std::string(PROCAUG_DATA_DIR) + "/lexicon";
}

}  // namespace procaug
