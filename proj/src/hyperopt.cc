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

#include "procaug/hyperopt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "procaug/augmenters.h"

namespace procaug {
namespace {

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double NormalPdf(double z) {
  static const double kNorm = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
  return kNorm * std::exp(-0.5 * z * z);
}

// Equal-weight mixture of Gaussians truncated to [lo, hi]. With no centers
// it is the uniform density on the interval.
class TruncatedMixture {
 public:
  TruncatedMixture(std::vector<double> centers, double lo, double hi)
      : centers_(std::move(centers)), lo_(lo), hi_(hi) {
    sigma_ = (hi_ - lo_) / static_cast<double>(std::max<std::size_t>(centers_.size(), 1));
    for (double mu : centers_) {
      mass_.push_back(NormalCdf((hi_ - mu) / sigma_) -
                      NormalCdf((lo_ - mu) / sigma_));
    }
  }

  double Sample(Rng& rng) const {
    if (centers_.empty()) return rng.Uniform(lo_, hi_);
    const double mu = centers_[rng.Index(centers_.size())];
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double x = mu + sigma_ * rng.Normal();
      if (x >= lo_ && x <= hi_) return x;
    }
    return std::clamp(mu, lo_, hi_);
  }

  double Density(double x) const {
    if (centers_.empty()) return 1.0 / (hi_ - lo_);
    double total = 0.0;
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      total += NormalPdf((x - centers_[k]) / sigma_) / (sigma_ * mass_[k]);
    }
    return total / static_cast<double>(centers_.size());
  }

  // Probability of [a, b] (clipped to the bounds).
  double Mass(double a, double b) const {
    a = std::max(a, lo_);
    b = std::min(b, hi_);
    if (b <= a) return 0.0;
    if (centers_.empty()) return (b - a) / (hi_ - lo_);
    double total = 0.0;
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      total += (NormalCdf((b - centers_[k]) / sigma_) -
                NormalCdf((a - centers_[k]) / sigma_)) /
               mass_[k];
    }
    return total / static_cast<double>(centers_.size());
  }

 private:
  std::vector<double> centers_;
  double lo_;
  double hi_;
  double sigma_;
  std::vector<double> mass_;
};

// Density model of one dimension fitted to one side of the split.
class DimensionModel {
 public:
  DimensionModel(const ParamSpec& spec, const std::vector<const ParamMap*>& points)
      : spec_(spec),
        mixture_(Centers(spec, points), Low(spec), High(spec)) {
    if (spec.kind == ParamKind::kCategorical) {
      probabilities_.assign(spec.choices.size(), 1.0);
      for (const ParamMap* p : points) {
        const std::string& v = std::get<std::string>(p->at(spec.name));
        for (std::size_t c = 0; c < spec.choices.size(); ++c) {
          if (spec.choices[c] == v) probabilities_[c] += 1.0;
        }
      }
      const double total = static_cast<double>(points.size() + spec.choices.size());
      for (double& q : probabilities_) q /= total;
    }
  }

  ParamValue Sample(Rng& rng) const {
    switch (spec_.kind) {
      case ParamKind::kFloat:
        return mixture_.Sample(rng);
      case ParamKind::kInt: {
        const double x = std::round(mixture_.Sample(rng));
        return static_cast<std::int64_t>(std::clamp(x, spec_.low, spec_.high));
      }
      case ParamKind::kCategorical: {
        double u = rng.Uniform();
        for (std::size_t c = 0; c + 1 < probabilities_.size(); ++c) {
          if (u < probabilities_[c]) return spec_.choices[c];
          u -= probabilities_[c];
        }
        return spec_.choices.back();
      }
    }
    return {};
  }

  double LogDensity(const ParamValue& value) const {
    double d = 0.0;
    switch (spec_.kind) {
      case ParamKind::kFloat:
        d = mixture_.Density(std::get<double>(value));
        break;
      case ParamKind::kInt: {
        const double v = static_cast<double>(std::get<std::int64_t>(value));
        d = mixture_.Mass(v - 0.5, v + 0.5);
        break;
      }
      case ParamKind::kCategorical: {
        const std::string& v = std::get<std::string>(value);
        for (std::size_t c = 0; c < spec_.choices.size(); ++c) {
          if (spec_.choices[c] == v) d = probabilities_[c];
        }
        break;
      }
    }
    return std::log(std::max(d, std::numeric_limits<double>::min()));
  }

 private:
  static double Low(const ParamSpec& s) {
    return s.kind == ParamKind::kInt ? s.low - 0.5 : s.low;
  }
  static double High(const ParamSpec& s) {
    return s.kind == ParamKind::kInt ? s.high + 0.5 : s.high;
  }
  static std::vector<double> Centers(const ParamSpec& spec,
                                     const std::vector<const ParamMap*>& points) {
    std::vector<double> out;
    if (spec.kind == ParamKind::kCategorical) return out;
    for (const ParamMap* p : points) {
      const ParamValue& v = p->at(spec.name);
      out.push_back(spec.kind == ParamKind::kFloat
                        ? std::get<double>(v)
                        : static_cast<double>(std::get<std::int64_t>(v)));
    }
    return out;
  }

  const ParamSpec& spec_;
  TruncatedMixture mixture_;
  std::vector<double> probabilities_;
};

}  // namespace

ParamMap SamplePrior(const ParamSpace& space, Rng& rng) {
  ParamMap point;
  for (const ParamSpec& d : space.dimensions()) {
    switch (d.kind) {
      case ParamKind::kFloat:
        point[d.name] = rng.Uniform(d.low, d.high);
        break;
      case ParamKind::kInt:
        point[d.name] = rng.Int(static_cast<std::int64_t>(d.low),
                                static_cast<std::int64_t>(d.high));
        break;
      case ParamKind::kCategorical:
        point[d.name] = d.choices[rng.Index(d.choices.size())];
        break;
    }
  }
  return point;
}

ParamMap Suggest(const ParamSpace& space,
                 const std::vector<TrialRecord>& history,
                 const TpeOptions& options, Rng& rng) {
  if (space.empty()) throw ConfigError("cannot search an empty space");
  if (!(options.gamma > 0.0 && options.gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  if (options.n_candidates < 1) {
    throw std::invalid_argument("n_candidates must be at least 1");
  }

  std::vector<const TrialRecord*> complete;
  for (const TrialRecord& t : history) {
    if (t.status == TrialStatus::kComplete) complete.push_back(&t);
  }
  if (complete.empty() ||
      complete.size() < static_cast<std::size_t>(std::max(options.n_startup, 0))) {
    return SamplePrior(space, rng);
  }

  std::stable_sort(complete.begin(), complete.end(),
                   [](const TrialRecord* a, const TrialRecord* b) {
                     return a->objective > b->objective;
                   });
  const std::size_t n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(options.gamma * static_cast<double>(complete.size()))));
  std::vector<const ParamMap*> good, bad;
  for (std::size_t k = 0; k < complete.size(); ++k) {
    (k < n_good ? good : bad).push_back(&complete[k]->point);
  }

  std::vector<DimensionModel> good_models, bad_models;
  for (const ParamSpec& d : space.dimensions()) {
    good_models.emplace_back(d, good);
    bad_models.emplace_back(d, bad);
  }

  ParamMap best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < options.n_candidates; ++c) {
    ParamMap candidate;
    double score = 0.0;
    for (std::size_t k = 0; k < space.dimensions().size(); ++k) {
      ParamValue v = good_models[k].Sample(rng);
      score += good_models[k].LogDensity(v) - bad_models[k].LogDensity(v);
      candidate[space.dimensions()[k].name] = std::move(v);
    }
    if (score > best_score) {
      best_score = score;
      best = std::move(candidate);
    }
  }
  return best;
}

std::vector<TrialRecord> Maximize(
    const ParamSpace& space,
    const std::function<double(const ParamMap&)>& objective, int n_trials,
    std::uint64_t seed, const TpeOptions& options) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be at least 1");
  Rng rng(DeriveSeed(seed, {"tpe"}));
  std::vector<TrialRecord> trials;
  for (int t = 0; t < n_trials; ++t) {
    TrialRecord record;
    record.trial_index = t;
    record.point = Suggest(space, trials, options, rng);
    try {
      record.objective = objective(record.point);
      if (!std::isfinite(record.objective)) {
        throw std::runtime_error("objective is not finite");
      }
    } catch (const std::exception& e) {
      record.status = TrialStatus::kFailed;
      record.objective = 0.0;
      record.message = e.what();
    }
    trials.push_back(std::move(record));
  }
  return trials;
}

std::size_t BestTrial(const std::vector<TrialRecord>& trials) {
  std::size_t best = trials.size();
  for (std::size_t k = 0; k < trials.size(); ++k) {
    if (trials[k].status != TrialStatus::kComplete) continue;
    if (best == trials.size() || trials[k].objective > trials[best].objective) {
      best = k;
    }
  }
  if (best == trials.size()) {
    std::string reason = trials.empty() ? "no trials" : trials.front().message;
    throw std::runtime_error("every trial failed (first: " + reason + ")");
  }
  return best;
}

OptimizeResult Optimize(const std::string& technique_id, const Corpus& corpus,
                        Task task, int n_trials, std::uint64_t seed,
                        const AugmentContext& context,
                        const CvOptions& cv_options,
                        const TpeOptions& tpe_options) {
  const Technique& technique = FindTechnique(technique_id);
  CvOptions cv = cv_options;
  cv.tasks = {task};
  const BaselineCache baseline = ComputeBaseline(corpus, seed, cv);
  auto objective = [&](const ParamMap& point) {
    const TechniqueConfig config = ConfigFromPoint(technique.id, point);
    return CrossValidate(corpus, config, context, seed, cv, &baseline)
        .ForTask(task)
        .gain;
  };
  OptimizeResult result;
  result.trials = Maximize(technique.space, objective, n_trials,
                           DeriveSeed(seed, {technique.id, TaskName(task)}),
                           tpe_options);
  result.best_trial = BestTrial(result.trials);
  result.best = ConfigFromPoint(technique.id, result.trials[result.best_trial].point);
  return result;
}

std::string TrialsToCsv(const std::string& technique_id, Task task,
                        const std::vector<TrialRecord>& trials) {
  std::string out = std::string(kTrialCsvHeader) + "\n";
  for (const TrialRecord& t : trials) {
    const bool complete = t.status == TrialStatus::kComplete;
    out += std::to_string(t.trial_index) + "," + CsvField(technique_id) + "," +
           std::string(TaskName(task)) + "," +
           (complete ? FormatReal(t.objective) : std::string()) + "," +
           CsvField(ParamsToJson(t.point).dump()) + "," +
           (complete ? "complete" : "failed") + "\n";
  }
  return out;
}

}  // namespace procaug
