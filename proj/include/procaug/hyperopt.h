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

// Tree-structured Parzen Estimator search over a ParamSpace, and the
// per-technique optimization loop that maximizes cross-validated gain.
//
// Dimensions are modelled independently. After the startup trials, the
// complete trials are split into the ceil(gamma * N) best ("good") and the
// rest ("bad"); each side gets a per-dimension density:
//
//   float        mixture of Gaussians at the observed values, bandwidth
//                range / max(n, 1), each truncated to the bounds
//   int          the float model over [low - 0.5, high + 0.5], rounded;
//                the density of v is the mixture mass of [v - 0.5, v + 0.5]
//   categorical  add-one smoothed frequencies
//
// Candidates are drawn from the good densities and the one with the largest
// sum over dimensions of log(good / bad) is returned.

#ifndef PROCAUG_HYPEROPT_H_
#define PROCAUG_HYPEROPT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "procaug/eval.h"
#include "procaug/params.h"
#include "procaug/util.h"

namespace procaug {

struct TpeOptions {
  double gamma = 0.25;
  int n_candidates = 24;
  int n_startup = 5;
};

enum class TrialStatus { kComplete, kFailed };

struct TrialRecord {
  int trial_index = 0;
  ParamMap point;           // one value per space dimension
  double objective = 0.0;   // meaningful only when complete
  TrialStatus status = TrialStatus::kComplete;
  std::string message;      // failure reason
};

// Uniform draw from the whole space.
ParamMap SamplePrior(const ParamSpace& space, Rng& rng);

// Next point to evaluate; larger objectives are better. Failed trials are
// ignored. Throws ConfigError on an empty space and std::invalid_argument on
// gamma outside (0, 1) or n_candidates < 1.
ParamMap Suggest(const ParamSpace& space,
                 const std::vector<TrialRecord>& history,
                 const TpeOptions& options, Rng& rng);

// Sequential TPE maximization of `objective`. An exception thrown by the
// objective marks that trial failed. Seeded from `seed` only.
std::vector<TrialRecord> Maximize(
    const ParamSpace& space,
    const std::function<double(const ParamMap&)>& objective, int n_trials,
    std::uint64_t seed, const TpeOptions& options = {});

// Index into `trials` of the best complete trial (earliest on ties). Throws
// std::runtime_error when every trial failed.
std::size_t BestTrial(const std::vector<TrialRecord>& trials);

struct OptimizeResult {
  TechniqueConfig best;
  std::size_t best_trial = 0;
  std::vector<TrialRecord> trials;
};

inline constexpr std::string_view kTrialCsvHeader =
    "trial,technique_id,task,objective,params_json,status";

// Tunes `technique_id` for `task`: every trial runs CrossValidate with the
// same seed (the baseline arm is computed once) and records the task's gain.
OptimizeResult Optimize(const std::string& technique_id, const Corpus& corpus,
                        Task task, int n_trials, std::uint64_t seed,
                        const AugmentContext& context,
                        const CvOptions& cv_options = {},
                        const TpeOptions& tpe_options = {});

std::string TrialsToCsv(const std::string& technique_id, Task task,
                        const std::vector<TrialRecord>& trials);

}  // namespace procaug

#endif  // PROCAUG_HYPEROPT_H_
