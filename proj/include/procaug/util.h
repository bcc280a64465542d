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

#ifndef PROCAUG_UTIL_H_
#define PROCAUG_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace procaug {

// Seeded generator with distribution helpers implemented on top of the raw
// 64-bit engine. The standard distributions are implementation-defined, so
// they are avoided wherever outputs must be byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform in [0, n). Requires n > 0.
  std::size_t Index(std::size_t n);
  // Uniform in [lo, hi].
  std::int64_t Int(std::int64_t lo, std::int64_t hi);
  bool Bernoulli(double p) { return p > 0.0 && Uniform() < p; }
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[Index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Stable 64-bit mixing of a seed with string and integer parts. Used to give
// each (document, technique, replica) its own stream independent of
// scheduling.
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::string_view> parts,
                         std::uint64_t index = 0);

std::string ToLower(std::string_view text);
bool IsCapitalized(std::string_view text);
// Gives `word` an initial capital when `reference` has one.
std::string MatchCase(std::string_view word, std::string_view reference);
// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWords(std::string_view text);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);
bool HasWhitespace(std::string_view text);
std::string_view Trim(std::string_view text);

std::string ReadFile(const std::string& path);
// Writes via a temporary file in the same directory followed by rename, so
// readers never observe a partially written file.
void WriteFileAtomic(const std::string& path, std::string_view contents);

// Runs body(i) for i in [0, n) on up to `workers` threads. Callers write
// results into per-index slots, so output never depends on the worker count.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& body);

// RFC 4180 quoting for one CSV field.
std::string CsvField(std::string_view value);
// Fixed six-decimal rendering used by every report.
std::string FormatReal(double value);

}  // namespace procaug

#endif  // PROCAUG_UTIL_H_
