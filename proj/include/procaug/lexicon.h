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

// Lexical resources for the rule-based augmenters.
//
// A lexicon directory holds up to four UTF-8 files:
//   lexicon.tsv        surface<TAB>POS<TAB>syn|ant<TAB>target
//                      surface<TAB>POS            (part-of-speech only)
//   abbreviations.tsv  short<TAB>long             (long: space-separated)
//   fillers.txt        one phrase per line        (required, non-empty)
//   stopwords.txt      one token per line
// Blank lines and lines starting with '#' are ignored everywhere.

#ifndef PROCAUG_LEXICON_H_
#define PROCAUG_LEXICON_H_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procaug {

enum class Pos { kNoun, kVerb, kAdj, kAdv, kOther };

std::string_view PosName(Pos pos);
// Throws std::invalid_argument for names other than NOUN/VERB/ADJ/ADV/OTHER.
Pos ParsePos(std::string_view name);

class LexiconError : public std::runtime_error {
 public:
  LexiconError(const std::string& file, std::size_t line,
               const std::string& message);
};

struct LexicalEntry {
  std::vector<std::string> synonyms;  // each may be a multi-word phrase
  std::vector<std::string> antonyms;
};

class Lexicon {
 public:
  Lexicon() = default;

  // Builders enforce the same invariants as the loader.
  void AddSynonym(std::string_view surface, Pos pos, std::string_view target);
  void AddAntonym(std::string_view surface, Pos pos, std::string_view target);
  void SetPos(std::string_view surface, Pos pos);
  void AddAbbreviation(std::string_view short_form, std::string_view long_form);
  void AddFiller(std::string_view phrase);
  void AddStopword(std::string_view word);

  // All lookups are case-insensitive on the surface form.
  Pos CoarsePos(std::string_view token) const;
  // Entry for the token under its coarse POS, or nullptr.
  const LexicalEntry* Find(std::string_view token) const;
  const std::vector<std::string>& Synonyms(std::string_view token) const;
  const std::vector<std::string>& Antonyms(std::string_view token) const;
  bool IsStopword(std::string_view token) const;

  // Exact-case lookups; long forms are stored as token lists.
  const std::map<std::string, std::vector<std::string>>& expansions() const {
    return expansions_;
  }
  const std::map<std::vector<std::string>, std::string>& contractions() const {
    return contractions_;
  }
  const std::vector<std::string>& fillers() const { return fillers_; }
  const std::map<std::pair<std::string, Pos>, LexicalEntry>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::pair<std::string, Pos>, LexicalEntry> entries_;
  std::map<std::string, Pos> pos_;
  std::map<std::string, std::vector<std::string>> expansions_;
  std::map<std::vector<std::string>, std::string> contractions_;
  std::vector<std::string> fillers_;
  std::set<std::string> stopwords_;
};

// Loads a lexicon directory (layout above). Throws LexiconError naming the
// file and line for malformed rows, self-synonyms, duplicate abbreviation
// forms, and a missing or empty filler list.
Lexicon LoadLexicon(const std::string& directory);

// Directory of the lexicon shipped with the toolkit.
std::string BundledLexiconDirectory();

// Free function form of Lexicon::CoarsePos.
inline Pos CoarsePos(const Lexicon& lexicon, std::string_view token) {
  return lexicon.CoarsePos(token);
}

}  // namespace procaug

#endif  // PROCAUG_LEXICON_H_
