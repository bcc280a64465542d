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

#include "procaug/edit.h"

#include <algorithm>
#include <numeric>

#include "procaug/util.h"

namespace procaug {

const std::set<std::string>& MergePunctuation() {
  static const std::set<std::string> kPunctuation = {".", "!", "?", ";"};
  return kPunctuation;
}

namespace {

using IndexMap = std::vector<std::optional<std::size_t>>;

IndexMap Identity(std::size_t n) {
  IndexMap map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i;
  return map;
}

std::pair<Document, RemapReport> Unchanged(const Document& d) {
  RemapReport report;
  report.index_map = Identity(d.tokens.size());
  return {d, std::move(report)};
}

std::pair<Document, RemapReport> Rejected(const Document& d,
                                          std::string reason,
                                          std::vector<std::string> ids) {
  auto result = Unchanged(d);
  result.second.edits_rejected.push_back({0, std::move(reason), std::move(ids)});
  return result;
}

void CheckTexts(const std::vector<std::string>& texts) {
  for (const std::string& t : texts) {
    if (t.empty()) throw EditError("edit inserts an empty token");
    if (HasWhitespace(t)) {
      throw EditError("edit token '" + t + "' contains whitespace");
    }
  }
}

std::pair<Document, RemapReport> Apply(const Document& d,
                                       const InsertTokens& e) {
  const std::size_t n = d.tokens.size();
  if (e.position > n) throw EditError("insert position out of range");
  CheckTexts(e.texts);
  if (e.texts.empty()) return Unchanged(d);

  const std::size_t p = e.position;
  const std::size_t k = e.texts.size();
  int sentence = 0;
  if (n > 0) {
    if (p == n) {
      sentence = d.tokens[n - 1].sentence;
    } else if (p == 0) {
      sentence = d.tokens[0].sentence;
    } else {
      sentence = e.sentence_policy == SentencePolicy::kFollowing
                     ? d.tokens[p].sentence
                     : d.tokens[p - 1].sentence;
    }
  }

  Document out = d;
  std::vector<Token> inserted;
  for (const std::string& t : e.texts) inserted.push_back({t, sentence});
  out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(p),
                    inserted.begin(), inserted.end());
  for (Mention& m : out.mentions) {
    if (m.start < p && p <= m.end) {
      m.end += k;
    } else if (m.start >= p) {
      m.start += k;
      m.end += k;
    }
  }

  RemapReport report;
  report.index_map.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.index_map[i] = i < p ? i : i + k;
  return {std::move(out), std::move(report)};
}

std::pair<Document, RemapReport> Apply(const Document& d,
                                       const DeleteTokens& e) {
  const std::size_t n = d.tokens.size();
  for (std::size_t pos : e.positions) {
    if (pos >= n) throw EditError("delete position out of range");
  }
  if (e.positions.empty()) return Unchanged(d);

  std::vector<std::string> emptied;
  for (const Mention& m : d.mentions) {
    bool survives = false;
    for (std::size_t i = m.start; i <= m.end && !survives; ++i) {
      survives = !e.positions.contains(i);
    }
    if (!survives) emptied.push_back(m.id);
  }
  if (!emptied.empty()) {
    return Rejected(d, "deletion would empty a mention", std::move(emptied));
  }

  RemapReport report;
  report.index_map.resize(n);
  Document out = d;
  out.tokens.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (e.positions.contains(i)) continue;
    report.index_map[i] = out.tokens.size();
    out.tokens.push_back(d.tokens[i]);
  }
  for (Mention& m : out.mentions) {
    std::size_t first = m.start;
    while (!report.index_map[first]) ++first;
    std::size_t last = m.end;
    while (!report.index_map[last]) --last;
    std::size_t surviving = 0;
    for (std::size_t i = m.start; i <= m.end; ++i) {
      surviving += report.index_map[i].has_value();
    }
    if (surviving != m.length()) report.mentions_shrunk.push_back(m.id);
    m.start = *report.index_map[first];
    m.end = *report.index_map[last];
  }
  return {std::move(out), std::move(report)};
}

std::pair<Document, RemapReport> Apply(const Document& d,
                                       const ReplaceSpan& e) {
  const std::size_t n = d.tokens.size();
  if (e.start > e.end || e.end >= n) {
    throw EditError("replace range out of range");
  }
  if (e.texts.empty()) throw EditError("replacement text list is empty");
  CheckTexts(e.texts);

  const std::size_t a = e.start;
  const std::size_t b = e.end;
  const int sentence = d.tokens[a].sentence;
  if (d.tokens[b].sentence != sentence) {
    return Rejected(d, "replaced range crosses a sentence boundary", {});
  }
  std::vector<std::string> crossing;
  for (const Mention& m : d.mentions) {
    const bool disjoint = m.end < a || m.start > b;
    const bool contained = m.start <= a && b <= m.end;
    if (!disjoint && !contained) crossing.push_back(m.id);
  }
  if (!crossing.empty()) {
    return Rejected(d, "replaced range crosses a mention boundary",
                    std::move(crossing));
  }

  const std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(e.texts.size()) -
                               static_cast<std::ptrdiff_t>(b - a + 1);
  auto shift = [delta](std::size_t i) {
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + delta);
  };

  Document out = d;
  out.tokens.clear();
  out.tokens.insert(out.tokens.end(), d.tokens.begin(),
                    d.tokens.begin() + static_cast<std::ptrdiff_t>(a));
  for (const std::string& t : e.texts) out.tokens.push_back({t, sentence});
  out.tokens.insert(out.tokens.end(),
                    d.tokens.begin() + static_cast<std::ptrdiff_t>(b + 1),
                    d.tokens.end());
  for (Mention& m : out.mentions) {
    if (m.start > b) {
      m.start = shift(m.start);
      m.end = shift(m.end);
    } else if (m.start <= a && b <= m.end) {
      m.end = shift(m.end);
    }
  }

  RemapReport report;
  report.index_map.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a) {
      report.index_map[i] = i;
    } else if (i > b) {
      report.index_map[i] = shift(i);
    }
  }
  return {std::move(out), std::move(report)};
}

std::pair<Document, RemapReport> Apply(const Document& d, const SwapTokens& e) {
  const std::size_t n = d.tokens.size();
  if (e.first >= n || e.second >= n) {
    throw EditError("swap index out of range");
  }
  if (e.first == e.second) return Unchanged(d);
  const int a = d.MentionAt(e.first);
  const int b = d.MentionAt(e.second);
  if (a != b) {
    std::vector<std::string> ids;
    if (a >= 0) ids.push_back(d.mentions[static_cast<std::size_t>(a)].id);
    if (b >= 0) ids.push_back(d.mentions[static_cast<std::size_t>(b)].id);
    return Rejected(d, "swap crosses a mention boundary", std::move(ids));
  }
  auto result = Unchanged(d);
  std::swap(result.first.tokens[e.first].text,
            result.first.tokens[e.second].text);
  return result;
}

std::pair<Document, RemapReport> Apply(const Document& d,
                                       const PermuteSentences& e) {
  const std::vector<Span> sentences = SentenceSpans(d);
  const std::size_t m = sentences.size();
  if (e.order.size() != m) {
    throw EditError("permutation size does not match sentence count");
  }
  std::vector<bool> seen(m, false);
  for (std::size_t s : e.order) {
    if (s >= m || seen[s]) throw EditError("sentence order is not a permutation");
    seen[s] = true;
  }

  RemapReport report;
  report.index_map.resize(d.tokens.size());
  Document out = d;
  out.tokens.clear();
  for (std::size_t j = 0; j < m; ++j) {
    const int label = d.tokens[sentences[j].start].sentence;
    const Span& source = sentences[e.order[j]];
    for (std::size_t i = source.start; i <= source.end; ++i) {
      report.index_map[i] = out.tokens.size();
      out.tokens.push_back({d.tokens[i].text, label});
    }
  }
  for (Mention& mention : out.mentions) {
    mention.start = *report.index_map[mention.start];
    mention.end = *report.index_map[mention.end];
  }
  return {std::move(out), std::move(report)};
}

std::pair<Document, RemapReport> Apply(const Document& d,
                                       const MergeSentences& e) {
  const std::vector<Span> sentences = SentenceSpans(d);
  if (e.first + 1 >= sentences.size()) {
    throw EditError("merge needs a following sentence");
  }
  const Span first = sentences[e.first];
  const Span second = sentences[e.first + 1];
  const int label = d.tokens[first.start].sentence;
  const int gap = d.tokens[second.start].sentence - label;
  const bool strip = MergePunctuation().contains(d.tokens[first.end].text) &&
                     d.MentionAt(first.end) < 0;

  RemapReport report;
  report.index_map.resize(d.tokens.size());
  Document out = d;
  out.tokens.clear();
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    if (strip && i == first.end) continue;
    Token t = d.tokens[i];
    if (i >= second.start) t.sentence = i <= second.end ? label : t.sentence - gap;
    report.index_map[i] = out.tokens.size();
    out.tokens.push_back(std::move(t));
  }
  for (Mention& mention : out.mentions) {
    mention.start = *report.index_map[mention.start];
    mention.end = *report.index_map[mention.end];
  }
  return {std::move(out), std::move(report)};
}

}  // namespace

std::pair<Document, RemapReport> ApplyEdit(const Document& document,
                                           const Edit& edit) {
  return std::visit([&document](const auto& e) { return Apply(document, e); },
                    edit);
}

std::pair<Document, RemapReport> ApplyEdits(const Document& document,
                                            const std::vector<Edit>& edits) {
  Document current = document;
  RemapReport total;
  total.index_map = Identity(document.tokens.size());
  for (std::size_t k = 0; k < edits.size(); ++k) {
    auto [next, report] = ApplyEdit(current, edits[k]);
    for (RejectedEdit& r : report.edits_rejected) {
      r.edit_index = k;
      total.edits_rejected.push_back(std::move(r));
    }
    for (std::string& id : report.mentions_shrunk) {
      if (std::find(total.mentions_shrunk.begin(), total.mentions_shrunk.end(),
                    id) == total.mentions_shrunk.end()) {
        total.mentions_shrunk.push_back(std::move(id));
      }
    }
    for (std::optional<std::size_t>& slot : total.index_map) {
      if (slot) slot = report.index_map[*slot];
    }
    current = std::move(next);
  }
  return {std::move(current), std::move(total)};
}

std::vector<Span> FreeSpans(const Document& document) {
  std::vector<bool> covered(document.tokens.size(), false);
  for (const Mention& m : document.mentions) {
    for (std::size_t i = m.start; i <= m.end && i < covered.size(); ++i) {
      covered[i] = true;
    }
  }
  std::vector<Span> spans;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (covered[i]) continue;
    if (!spans.empty() && spans.back().end + 1 == i) {
      spans.back().end = i;
    } else {
      spans.push_back({i, i});
    }
  }
  return spans;
}

std::vector<Segment> Segments(const Document& document) {
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < document.mentions.size(); ++i) {
    const Mention& m = document.mentions[i];
    segments.push_back({{m.start, m.end}, static_cast<int>(i)});
  }
  for (const Span& free : FreeSpans(document)) {
    std::size_t start = free.start;
    for (std::size_t i = free.start + 1; i <= free.end; ++i) {
      if (document.tokens[i].sentence != document.tokens[i - 1].sentence) {
        segments.push_back({{start, i - 1}, -1});
        start = i;
      }
    }
    segments.push_back({{start, free.end}, -1});
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) {
              return a.span.start < b.span.start;
            });
  return segments;
}

std::vector<Span> SentenceSpans(const Document& document) {
  std::vector<Span> spans;
  for (std::size_t i = 0; i < document.tokens.size(); ++i) {
    if (i > 0 &&
        document.tokens[i].sentence == document.tokens[i - 1].sentence) {
      spans.back().end = i;
    } else {
      spans.push_back({i, i});
    }
  }
  return spans;
}

}  // namespace procaug
