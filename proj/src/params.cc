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

#include "procaug/params.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "procaug/util.h"

namespace procaug {

ParamSpec ParamSpec::Float(std::string name, double low, double high,
                           double default_value) {
  ParamSpec spec;
  spec.name = std::move(name);
  spec.kind = ParamKind::kFloat;
  spec.low = low;
  spec.high = high;
  spec.default_value = default_value;
  return spec;
}

ParamSpec ParamSpec::Int(std::string name, std::int64_t low, std::int64_t high,
                         std::int64_t default_value) {
  ParamSpec spec;
  spec.name = std::move(name);
  spec.kind = ParamKind::kInt;
  spec.low = static_cast<double>(low);
  spec.high = static_cast<double>(high);
  spec.default_value = default_value;
  return spec;
}

ParamSpec ParamSpec::Categorical(std::string name,
                                 std::vector<std::string> choices,
                                 std::string default_value) {
  ParamSpec spec;
  spec.name = std::move(name);
  spec.kind = ParamKind::kCategorical;
  spec.choices = std::move(choices);
  spec.low = 0.0;
  spec.high = static_cast<double>(spec.choices.size());
  spec.default_value = std::move(default_value);
  return spec;
}

bool ParamSpec::Contains(const ParamValue& value) const {
  switch (kind) {
    case ParamKind::kFloat: {
      const double* v = std::get_if<double>(&value);
      return v && std::isfinite(*v) && *v >= low && *v <= high;
    }
    case ParamKind::kInt: {
      const std::int64_t* v = std::get_if<std::int64_t>(&value);
      return v && static_cast<double>(*v) >= low &&
             static_cast<double>(*v) <= high;
    }
    case ParamKind::kCategorical: {
      const std::string* v = std::get_if<std::string>(&value);
      return v &&
             std::find(choices.begin(), choices.end(), *v) != choices.end();
    }
  }
  return false;
}

ParamSpace::ParamSpace(std::vector<ParamSpec> dimensions)
    : dimensions_(std::move(dimensions)) {
  std::set<std::string> names;
  for (const ParamSpec& d : dimensions_) {
    if (!names.insert(d.name).second) {
      throw ConfigError("duplicate parameter '" + d.name + "'");
    }
    if (d.kind == ParamKind::kCategorical) {
      if (d.choices.empty()) {
        throw ConfigError("parameter '" + d.name + "' has no choices");
      }
    } else if (!std::isfinite(d.low) || !std::isfinite(d.high) ||
               !(d.low < d.high)) {
      throw ConfigError("parameter '" + d.name + "' has degenerate bounds");
    }
    if (!d.Contains(d.default_value)) {
      throw ConfigError("default of '" + d.name + "' lies outside its space");
    }
  }
}

const ParamSpec* ParamSpace::Find(std::string_view name) const {
  for (const ParamSpec& d : dimensions_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

ParamValue ParseParamValue(const ParamSpec& spec, std::string_view text) {
  const std::string_view t = Trim(text);
  ParamValue value;
  switch (spec.kind) {
    case ParamKind::kFloat: {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(std::string(t), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != t.size()) {
        throw ConfigError("parameter '" + spec.name + "' expects a number");
      }
      value = v;
      break;
    }
    case ParamKind::kInt: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError("parameter '" + spec.name + "' expects an integer");
      }
      value = v;
      break;
    }
    case ParamKind::kCategorical:
      value = std::string(t);
      break;
  }
  if (!spec.Contains(value)) {
    throw ConfigError("value '" + std::string(t) + "' is outside the range of '" +
                      spec.name + "'");
  }
  return value;
}

std::string FormatParamValue(const ParamValue& value) {
  if (const double* d = std::get_if<double>(&value)) {
    return nlohmann::json(*d).dump();
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&value)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(value);
}

namespace {

const ParamValue& Get(const ParamMap& params, std::string_view name) {
  auto it = params.find(std::string(name));
  if (it == params.end()) {
    throw ConfigError("missing parameter '" + std::string(name) + "'");
  }
  return it->second;
}

}  // namespace

double GetFloat(const ParamMap& params, std::string_view name) {
  const ParamValue& v = Get(params, name);
  if (const double* d = std::get_if<double>(&v)) return *d;
  throw ConfigError("parameter '" + std::string(name) + "' is not a float");
}

std::int64_t GetInt(const ParamMap& params, std::string_view name) {
  const ParamValue& v = Get(params, name);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return *i;
  throw ConfigError("parameter '" + std::string(name) + "' is not an integer");
}

const std::string& GetString(const ParamMap& params, std::string_view name) {
  const ParamValue& v = Get(params, name);
  if (const std::string* s = std::get_if<std::string>(&v)) return *s;
  throw ConfigError("parameter '" + std::string(name) +
                    "' is not categorical");
}

bool GetBool(const ParamMap& params, std::string_view name) {
  const std::string& s = GetString(params, name);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("parameter '" + std::string(name) + "' is not a boolean");
}

nlohmann::json ParamsToJson(const ParamMap& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : params) {
    std::visit([&j, &name](const auto& v) { j[name] = v; }, value);
  }
  return j;
}

nlohmann::json ConfigToJson(const TechniqueConfig& config) {
  return {{"technique_id", config.technique_id},
          {"params", ParamsToJson(config.params)},
          {"n_aug", config.n_aug}};
}

TechniqueConfig ConfigFromJson(const nlohmann::json& j) {
  TechniqueConfig config;
  config.technique_id = j.at("technique_id").get<std::string>();
  config.n_aug = j.value("n_aug", std::int64_t{1});
  for (const auto& [name, value] : j.at("params").items()) {
    if (value.is_number_integer()) {
      config.params[name] = value.get<std::int64_t>();
    } else if (value.is_number()) {
      config.params[name] = value.get<double>();
    } else if (value.is_string()) {
      config.params[name] = value.get<std::string>();
    } else {
      throw ConfigError("parameter '" + name + "' has an unsupported type");
    }
  }
  return config;
}

}  // namespace procaug
