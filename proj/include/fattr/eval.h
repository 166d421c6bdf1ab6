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

#ifndef FATTR_EVAL_H_
#define FATTR_EVAL_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fattr/feature_set.h"
#include "fattr/methods.h"
#include "fattr/task.h"
#include "json.hpp"

namespace fattr {

// Threshold-free method outputs for every centroid of every task.
struct BatchOutputs {
  std::string method;
  std::vector<std::vector<MethodOutput>> outputs;  // [task][centroid]
  double wall_time_s = 0.0;
};

// Runs `config` on every centroid. Task t, centroid j draws from the stream
// MethodSeed(seed, method, t, j), so results do not depend on `threads`.
BatchOutputs RunBatch(const MethodConfig& config, const std::vector<Task>& tasks,
                      std::uint64_t seed, int threads = 1);

using Predictions = std::vector<std::vector<FeatureSet>>;  // [task][centroid]

Predictions SelectAll(const BatchOutputs& batch, double threshold);

// lo, lo + 0.01, ..., hi, computed from integer steps.
std::vector<double> ThresholdGrid(double lo, double hi);
std::vector<double> ThresholdGrid(const MethodInfo& method);

struct TuneResult {
  double threshold = 0.0;
  double accuracy = 0.0;
  std::vector<std::pair<double, double>> curve;  // (threshold, accuracy)
};

// Argmax of mean selection accuracy over `grid`; ties go to the smaller
// threshold.
TuneResult Tune(const BatchOutputs& batch, const std::vector<Task>& tasks,
                const std::vector<double>& grid);

struct EvalReport {
  std::string method;
  std::string family;
  double accuracy = 0.0;
  std::optional<double> acc_star;  // feature methods on univariate families
  double property1_rate = 0.0;
  double ci_half_width = 0.0;      // for accuracy
  double property1_ci = 0.0;
  std::size_t centroids = 0;
  double wall_time_s = 0.0;
  double threshold = 0.0;
  nlohmann::ordered_json config;
};

// 1.96 sqrt(p (1 - p) / count).
double CiHalfWidth(double p, std::size_t count);

// Exact-set accuracy and the Property-1 rate, both pooled over centroids.
// `feature_values`, when given, yields Acc*: the argmax feature (lowest index
// on ties) must equal the singleton ground truth. Throws ArgumentError when
// the predictions do not cover every centroid.
EvalReport Score(const std::vector<Task>& tasks, const Predictions& predictions,
                 const std::vector<std::vector<Eigen::VectorXd>>* feature_values =
                     nullptr);

// Convenience: select at `threshold`, score, and fill method metadata.
EvalReport ScoreBatch(const BatchOutputs& batch, const std::vector<Task>& tasks,
                      double threshold, const std::string& family);

// Spearman rank correlation with average ranks for ties.
double Spearman(const std::vector<double>& a, const std::vector<double>& b);

// Spearman between property-1 rates and accuracies; needs >= 5 reports.
double Correlate(const std::vector<EvalReport>& reports);

// CSV with header method,family,accuracy,acc_star,prop1_rate,ci,centroids,wall_time_s.
void WriteReportsCsv(std::ostream& os, const std::vector<EvalReport>& reports);
nlohmann::ordered_json ReportsToJson(const std::vector<EvalReport>& reports);

}  // namespace fattr

#endif  // FATTR_EVAL_H_
