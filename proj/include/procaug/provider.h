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

// Rewrite backends for the model-based techniques (span-wise back
// translation and contextual word replacement).
//
// Wire protocol, shared by the HTTP client and the in-process stubs:
//
//   POST /rewrite
//   {"mode":"back_translate"|"contextual","pivot":"de","seed":7,
//    "texts":["...", ...]}
//   -> {"texts":["...", ...]}            (same length as the request)
//
// "pivot" is present only in back_translate mode. In contextual mode each
// input is a sentence with exactly one target token wrapped as [[token]], and
// each output is the replacement for that target (possibly several words).

#ifndef PROCAUG_PROVIDER_H_
#define PROCAUG_PROVIDER_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "procaug/lexicon.h"

namespace procaug {

struct RewriteMode {
  enum class Kind { kBackTranslate, kContextual };
  Kind kind = Kind::kBackTranslate;
  std::string pivot;  // back_translate only

  static RewriteMode BackTranslate(std::string pivot) {
    return {Kind::kBackTranslate, std::move(pivot)};
  }
  static RewriteMode Contextual() { return {Kind::kContextual, ""}; }
};

class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  // Must be deterministic for fixed (texts, mode, seed) and return exactly
  // texts.size() strings; callers treat any violation as a failure.
  virtual std::vector<std::string> Rewrite(const std::vector<std::string>& texts,
                                           const RewriteMode& mode,
                                           std::uint64_t seed) = 0;
};

// Target markers used in contextual requests.
inline constexpr std::string_view kTargetOpen = "[[";
inline constexpr std::string_view kTargetClose = "]]";

// Extracts the marked target from a contextual request; empty when absent.
std::string ContextualTarget(std::string_view marked_sentence);

nlohmann::json RewriteRequestJson(const std::vector<std::string>& texts,
                                  const RewriteMode& mode, std::uint64_t seed);
// Parses a request body; throws ProviderError on schema violations.
void ParseRewriteRequest(const nlohmann::json& body,
                         std::vector<std::string>& texts, RewriteMode& mode,
                         std::uint64_t& seed);

// Returns inputs unchanged (contextual: the target itself).
class IdentityProvider : public ParaphraseProvider {
 public:
  std::vector<std::string> Rewrite(const std::vector<std::string>& texts,
                                   const RewriteMode& mode,
                                   std::uint64_t seed) override;
};

// Returns one fixed replacement for every contextual target, and the fixed
// word once per input word in back_translate mode.
class FixedWordProvider : public ParaphraseProvider {
 public:
  explicit FixedWordProvider(std::string word) : word_(std::move(word)) {}
  std::vector<std::string> Rewrite(const std::vector<std::string>& texts,
                                   const RewriteMode& mode,
                                   std::uint64_t seed) override;

 private:
  std::string word_;
};

// Deterministic dictionary-based rewriting standing in for translation and
// masked-language models: each word with lexicon synonyms is replaced by one
// of them, chosen by hashing (seed, pivot, word). Words without synonyms are
// kept, so rewrites are never empty for non-empty input.
class StubProvider : public ParaphraseProvider {
 public:
  explicit StubProvider(const Lexicon& lexicon) : lexicon_(lexicon) {}
  std::vector<std::string> Rewrite(const std::vector<std::string>& texts,
                                   const RewriteMode& mode,
                                   std::uint64_t seed) override;

 private:
  std::string RewriteWord(const std::string& word, std::string_view salt,
                          std::uint64_t seed) const;
  const Lexicon& lexicon_;
};

// Client for the HTTP wire protocol. Transport errors, non-200 responses and
// malformed bodies raise ProviderError.
class HttpProvider : public ParaphraseProvider {
 public:
  // `endpoint` is a base URL such as "http://127.0.0.1:8080".
  explicit HttpProvider(std::string endpoint, int timeout_seconds = 30);
  std::vector<std::string> Rewrite(const std::vector<std::string>& texts,
                                   const RewriteMode& mode,
                                   std::uint64_t seed) override;

 private:
  std::string endpoint_;
  int timeout_seconds_;
};

// "stub" selects StubProvider over `lexicon`, "identity" IdentityProvider,
// anything else is taken as an HTTP endpoint.
std::unique_ptr<ParaphraseProvider> MakeProvider(const std::string& spec,
                                                 const Lexicon& lexicon);

}  // namespace procaug

#endif  // PROCAUG_PROVIDER_H_
