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

#include "procaug/provider.h"

#include "httplib.h"
#include "procaug/util.h"

namespace procaug {

using nlohmann::json;

std::string ContextualTarget(std::string_view marked_sentence) {
  const std::size_t open = marked_sentence.find(kTargetOpen);
  if (open == std::string_view::npos) return {};
  const std::size_t begin = open + kTargetOpen.size();
  const std::size_t close = marked_sentence.find(kTargetClose, begin);
  if (close == std::string_view::npos) return {};
  return std::string(marked_sentence.substr(begin, close - begin));
}

json RewriteRequestJson(const std::vector<std::string>& texts,
                        const RewriteMode& mode, std::uint64_t seed) {
  json body = {{"mode", mode.kind == RewriteMode::Kind::kBackTranslate
                            ? "back_translate"
                            : "contextual"},
               {"seed", seed},
               {"texts", texts}};
  if (mode.kind == RewriteMode::Kind::kBackTranslate) body["pivot"] = mode.pivot;
  return body;
}

void ParseRewriteRequest(const json& body, std::vector<std::string>& texts,
                         RewriteMode& mode, std::uint64_t& seed) {
  try {
    const std::string kind = body.at("mode").get<std::string>();
    if (kind == "back_translate") {
      mode = RewriteMode::BackTranslate(body.value("pivot", std::string()));
    } else if (kind == "contextual") {
      mode = RewriteMode::Contextual();
    } else {
      throw ProviderError("unknown rewrite mode '" + kind + "'");
    }
    seed = body.at("seed").get<std::uint64_t>();
    texts = body.at("texts").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ProviderError(std::string("malformed rewrite request: ") + e.what());
  }
}

std::vector<std::string> IdentityProvider::Rewrite(
    const std::vector<std::string>& texts, const RewriteMode& mode,
    std::uint64_t) {
  if (mode.kind == RewriteMode::Kind::kBackTranslate) return texts;
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(ContextualTarget(t));
  return out;
}

std::vector<std::string> FixedWordProvider::Rewrite(
    const std::vector<std::string>& texts, const RewriteMode& mode,
    std::uint64_t) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) {
    if (mode.kind == RewriteMode::Kind::kContextual) {
      out.push_back(word_);
    } else {
      std::vector<std::string> words(SplitWords(t).size(), word_);
      out.push_back(Join(words, " "));
    }
  }
  return out;
}

std::string StubProvider::RewriteWord(const std::string& word,
                                      std::string_view salt,
                                      std::uint64_t seed) const {
  const std::vector<std::string>& synonyms = lexicon_.Synonyms(word);
  if (synonyms.empty()) return word;
  const std::uint64_t pick = DeriveSeed(seed, {salt, ToLower(word)});
  return MatchCase(synonyms[pick % synonyms.size()], word);
}

std::vector<std::string> StubProvider::Rewrite(
    const std::vector<std::string>& texts, const RewriteMode& mode,
    std::uint64_t seed) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) {
    if (mode.kind == RewriteMode::Kind::kContextual) {
      const std::string target = ContextualTarget(t);
      out.push_back(target.empty() ? target
                                   : RewriteWord(target, "contextual", seed));
      continue;
    }
    std::vector<std::string> words;
    for (const std::string& w : SplitWords(t)) {
      words.push_back(RewriteWord(w, mode.pivot, seed));
    }
    out.push_back(Join(words, " "));
  }
  return out;
}

HttpProvider::HttpProvider(std::string endpoint, int timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
}

std::vector<std::string> HttpProvider::Rewrite(
    const std::vector<std::string>& texts, const RewriteMode& mode,
    std::uint64_t seed) {
  httplib::Client client(endpoint_);
  if (!client.is_valid()) {
    throw ProviderError("invalid provider endpoint '" + endpoint_ + "'");
  }
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  client.set_write_timeout(timeout_seconds_, 0);
  const std::string body = RewriteRequestJson(texts, mode, seed).dump();
  httplib::Result result = client.Post("/rewrite", body, "application/json");
  if (!result) {
    throw ProviderError("provider request failed: " +
                        httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw ProviderError("provider returned HTTP " +
                        std::to_string(result->status));
  }
  std::vector<std::string> out;
  try {
    out = json::parse(result->body).at("texts").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ProviderError(std::string("malformed provider response: ") +
                        e.what());
  }
  if (out.size() != texts.size()) {
    throw ProviderError("provider returned " + std::to_string(out.size()) +
                        " texts for " + std::to_string(texts.size()));
  }
  return out;
}

std::unique_ptr<ParaphraseProvider> MakeProvider(const std::string& spec,
                                                 const Lexicon& lexicon) {
  if (spec == "stub") return std::make_unique<StubProvider>(lexicon);
  if (spec == "identity") return std::make_unique<IdentityProvider>();
  return std::make_unique<HttpProvider>(spec);
}

}  // namespace procaug
