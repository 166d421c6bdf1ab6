/*
 * Copyright 2026 The fattr Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FATTR_EXPERIMENT_H_
#define FATTR_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fattr/eval.h"
#include "fattr/task.h"
#include "json.hpp"

namespace fattr {

// A batch of generated tasks. Task t has dimension
// dim_min + t mod (dim_max - dim_min + 1) and seed DeriveSeed(seed, t).
struct FamilySpec {
  std::string family = "multivariate";  // or "univariate"
  int count = 100;
  int dim_min = 2;
  int dim_max = 11;
  double erase_prob = 0.3;
  double sigma = 0.25;
  double noise_ratio = 0.5;

  // Throws ArgumentError.
  void Validate() const;
  TaskConfig ToTaskConfig() const;
};

// Throws GenerationError naming the task index that ran out of retries.
std::vector<Task> GenerateFamily(const FamilySpec& spec, std::uint64_t seed,
                                 int threads = 1);

// "<family>_<index>.json"
std::string TaskFileName(const std::string& family, std::size_t index);

nlohmann::ordered_json FamilyManifest(const FamilySpec& spec, std::uint64_t seed,
                                      const std::vector<Task>& tasks);

// Writes every task file plus manifest.json into `dir`, creating it.
void WriteFamily(const std::string& dir, const FamilySpec& spec, std::uint64_t seed,
                 const std::vector<Task>& tasks);

struct LoadedFamily {
  std::string family;
  std::vector<Task> tasks;
};

// Reads manifest.json and the task files it lists, in manifest order.
LoadedFamily LoadFamily(const std::string& dir);

// Method configuration used by the benchmark for `id`.
MethodConfig BenchConfig(const std::string& id);

using ThresholdTable = std::map<std::string, TuneResult>;

// Tunes each method on `tasks` over its documented grid.
ThresholdTable TuneMethods(const std::vector<std::string>& ids,
                           const std::vector<Task>& tasks, std::uint64_t seed,
                           int threads = 1);

nlohmann::ordered_json ThresholdsToJson(const std::vector<std::string>& ids,
                                        const ThresholdTable& table);
// Threshold per method id. Throws ParseError.
std::map<std::string, double> ThresholdsFromJson(const nlohmann::ordered_json& json);

// Runs and scores each method at its threshold, in `ids` order. Throws
// ArgumentError when a threshold is missing.
std::vector<EvalReport> EvaluateMethods(const std::vector<std::string>& ids,
                                        const LoadedFamily& family,
                                        const std::map<std::string, double>& thresholds,
                                        std::uint64_t seed, int threads = 1);

}  // namespace fattr

#endif  // FATTR_EXPERIMENT_H_
