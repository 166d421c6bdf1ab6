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

#ifndef FATTR_METHODS_H_
#define FATTR_METHODS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fattr/feature_set.h"
#include "fattr/oracle.h"
#include "fattr/random.h"
#include "fattr/shapley.h"

namespace fattr {

// Selects { i | values_i >= mu * max_j values_j }. If every value is zero the
// full set is returned. Requires mu in (0, 1] and non-negative values.
FeatureSet SelectFromFeatures(const Eigen::VectorXd& values, double mu);

// Selection rule shared by the subset-valued methods: the first candidate, in
// the method's preference order, whose score reaches eta; `fallback` when
// none does. Only score records are kept since no other candidate can ever
// be the first to clear a threshold.
class SubsetCandidates {
 public:
  SubsetCandidates() = default;
  SubsetCandidates(const std::vector<std::pair<FeatureSet, double>>& ordered,
                   FeatureSet fallback);

  FeatureSet Select(double eta) const;
  const std::vector<std::pair<FeatureSet, double>>& records() const { return records_; }
  const FeatureSet& fallback() const { return fallback_; }

 private:
  std::vector<std::pair<FeatureSet, double>> records_;
  FeatureSet fallback_;
};

// --- attr-GA^kM -------------------------------------------------------------

struct GakmResult {
  FeatureSet selection;
  SubsetValues values;  // attr_prob per subset with |I| <= k
};

// Candidates in (cardinality, bitmask) order up to order k, scored by
// attr_prob; fallback is the argmax at order exactly k.
SubsetCandidates GakmCandidates(const SubsetValues& attr, int k);
GakmResult AttrGakm(const MixtureOracle& oracle, const Eigen::VectorXd& x, int k,
                    double eta);

// attr-GAM feature values 2 * attr_prob(x, {i}) - 1, in [0, 1].
Eigen::VectorXd AttrGam(const MixtureOracle& oracle, const Eigen::VectorXd& x);

// --- Shapley family ------------------------------------------------------------

// v(I) = P(Y = 1 | X_I = x_I).
ShapleyEstimate ShapleyExpectation(const MixtureOracle& oracle,
                                   const Eigen::VectorXd& x, int max_samples,
                                   Rng& rng);
// v(I) = f'(x_I, mean_{complement of I}).
ShapleyEstimate ShapBaseline(const MixtureOracle& oracle, const Eigen::VectorXd& x,
                             int max_samples, Rng& rng);

// --- gradients ------------------------------------------------------------------

enum class GradientVariant { kGrad, kGradXInput, kIntegrated, kExpected };

struct GradientConfig {
  int steps = 50;      // integrated: midpoints of equal intervals
  int samples = 500;   // expected: (alpha, background centroid) draws
  bool absolute = true;
};

// Integrated uses the centroid mean as baseline.
Eigen::VectorXd GradientAttribution(const MixtureOracle& oracle,
                                    const Eigen::VectorXd& x,
                                    GradientVariant variant,
                                    const GradientConfig& config, Rng& rng);

// --- LIME -----------------------------------------------------------------------

enum class LimeMode { kCategorical, kContinuous };

struct LimeConfig {
  int samples = 1000;
  double ridge = 1.0;
  double cell_width = 0.25;  // categorical: grid cell width (the task sigma)
};

// Magnitudes of a kernel-weighted ridge fit of f' around x.
Eigen::VectorXd Lime(const MixtureOracle& oracle, const Eigen::VectorXd& x,
                     LimeMode mode, const LimeConfig& config, Rng& rng);

// Weighted ridge with an unpenalised intercept; returns the slopes.
Eigen::VectorXd WeightedRidge(const Eigen::MatrixXd& features,
                              const Eigen::VectorXd& targets,
                              const Eigen::VectorXd& weights, double ridge);

// --- Archipelago-style and InterpretableNN-style ----------------------------------

struct ArchipelagoResult {
  std::vector<FeatureSet> groups;  // disjoint cover of [n], by descending attr
  FeatureSet selection;
};

// Pairs {i, j} whose joint attr_prob reaches eta while neither singleton does
// are merged with union-find. The selection is the empty set if it already
// reaches eta, else the smallest single group that does, else the shortest
// prefix union of groups taken by descending attr, else the argmax group.
// `attr` must hold every order (the prefix unions may have any size).
ArchipelagoResult ArchipelagoSelect(const SubsetValues& attr, double eta);
ArchipelagoResult ArchipelagoStyle(const MixtureOracle& oracle,
                                   const Eigen::VectorXd& x, double eta);

// g = 4 (p - 1/2)^2.
inline double InterpretableNnMeasure(double p) { return 4.0 * (p - 0.5) * (p - 0.5); }

struct InterpretableNnResult {
  std::vector<std::pair<FeatureSet, double>> trace;  // greedy path with g
  SubsetCandidates candidates;
  FeatureSet selection;
};

// Greedy forward search over at most k additions.
InterpretableNnResult InterpretableNn(const MixtureOracle& oracle,
                                      const Eigen::VectorXd& x, int k, double eta);

// --- registry ---------------------------------------------------------------------

enum class MethodKind { kFeature, kSubset };

struct MethodInfo {
  std::string_view id;
  std::string_view label;
  MethodKind kind;
  double threshold_min;
  double threshold_max;
};

// Every benchmarked method, in report order.
std::span<const MethodInfo> MethodRegistry();
// Throws ArgumentError naming the valid ids.
const MethodInfo& FindMethod(std::string_view id);
std::string ValidMethodIds();

struct MethodConfig {
  std::string id;
  int shapley_samples = 128;
  GradientConfig gradient;
  LimeConfig lime;

  // Throws ArgumentError for an unknown id or out-of-range knobs.
  void Validate() const;
};

// Threshold-free output of one method on one point.
struct MethodOutput {
  MethodKind kind = MethodKind::kFeature;
  Eigen::VectorXd feature_values;
  SubsetCandidates candidates;
  // Set for subset methods whose grouping itself depends on eta.
  std::function<FeatureSet(double)> selector;

  // mu for feature methods, eta for subset methods.
  FeatureSet Select(double threshold) const;
};

MethodOutput RunMethod(const MethodConfig& config, const MixtureOracle& oracle,
                       const Eigen::VectorXd& x, Rng& rng);

// Stream for (method, task, point), independent of scheduling.
inline std::uint64_t MethodSeed(std::uint64_t master, std::string_view method,
                                std::uint64_t task, std::uint64_t point) {
  return DeriveSeed(DeriveSeed(master ^ StableHash(method), task), point);
}

}  // namespace fattr

#endif  // FATTR_METHODS_H_
