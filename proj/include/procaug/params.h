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

// Technique parameters and the spaces they are drawn from.

#ifndef PROCAUG_PARAMS_H_
#define PROCAUG_PARAMS_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace procaug {

using ParamValue = std::variant<double, std::int64_t, std::string>;

enum class ParamKind { kFloat, kInt, kCategorical };

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kFloat;
  double low = 0.0;   // float and int bounds, inclusive
  double high = 1.0;
  std::vector<std::string> choices;  // categorical only
  ParamValue default_value;

  static ParamSpec Float(std::string name, double low, double high,
                         double default_value);
  static ParamSpec Int(std::string name, std::int64_t low, std::int64_t high,
                       std::int64_t default_value);
  static ParamSpec Categorical(std::string name,
                               std::vector<std::string> choices,
                               std::string default_value);

  bool Contains(const ParamValue& value) const;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ordered list of independent dimensions. Throws ConfigError on construction
// when a dimension has non-finite or degenerate bounds, or duplicate names.
class ParamSpace {
 public:
  ParamSpace() = default;
  explicit ParamSpace(std::vector<ParamSpec> dimensions);

  const std::vector<ParamSpec>& dimensions() const { return dimensions_; }
  const ParamSpec* Find(std::string_view name) const;
  bool empty() const { return dimensions_.empty(); }

 private:
  std::vector<ParamSpec> dimensions_;
};

using ParamMap = std::map<std::string, ParamValue>;

// Name of the augmentation-factor dimension carried by every technique space.
inline constexpr std::string_view kAugmentationFactor = "n_aug";

struct TechniqueConfig {
  std::string technique_id;
  ParamMap params;
  std::int64_t n_aug = 1;

  bool operator==(const TechniqueConfig&) const = default;
};

// Parses a command-line value for the given dimension.
ParamValue ParseParamValue(const ParamSpec& spec, std::string_view text);
std::string FormatParamValue(const ParamValue& value);

// Typed accessors; throw ConfigError when missing or of the wrong kind.
double GetFloat(const ParamMap& params, std::string_view name);
std::int64_t GetInt(const ParamMap& params, std::string_view name);
const std::string& GetString(const ParamMap& params, std::string_view name);
bool GetBool(const ParamMap& params, std::string_view name);

nlohmann::json ParamsToJson(const ParamMap& params);
nlohmann::json ConfigToJson(const TechniqueConfig& config);
TechniqueConfig ConfigFromJson(const nlohmann::json& j);

}  // namespace procaug

#endif  // PROCAUG_PARAMS_H_
