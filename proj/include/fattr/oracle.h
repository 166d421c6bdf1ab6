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

#ifndef FATTR_ORACLE_H_
#define FATTR_ORACLE_H_

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "fattr/feature_set.h"
#include "fattr/random.h"
#include "fattr/relation.h"
#include "fattr/task.h"

namespace fattr {

// One value per subset of [n], indexed by bitmask. Entries never computed
// (orders above the requested cap) hold NaN.
class SubsetValues {
 public:
  SubsetValues() = default;
  explicit SubsetValues(int n)
      : n_(n),
        values_(std::size_t{1} << n, std::numeric_limits<double>::quiet_NaN()) {}

  int dims() const { return n_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::uint32_t mask) const { return values_[mask]; }
  double& operator[](std::uint32_t mask) { return values_[mask]; }
  double at(const FeatureSet& s) const { return values_.at(s.bits()); }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

struct LabeledSample {
  Point x;
  int label = 0;
};

struct ClassPosteriors {
  double negative = 0.0;  // P(Y = 0 | X_I = x_I)
  double positive = 0.0;  // P(Y = 1 | X_I = x_I)
};

// Equal-weight isotropic Gaussian mixture around labelled centroids. Since a
// projected isotropic Gaussian stays Gaussian, conditioning on X_I only
// involves the squared distances over the coordinates in I.
class MixtureOracle {
 public:
  explicit MixtureOracle(const Task& task);
  // `centroids` has one row per component. Throws ArgumentError on empty or
  // mismatched input, labels outside {0,1}, or noise_std <= 0.
  MixtureOracle(Eigen::MatrixXd centroids, const std::vector<int>& labels,
                double noise_std);

  int dims() const { return static_cast<int>(centroids_.cols()); }
  Eigen::Index size() const { return centroids_.rows(); }
  double noise_std() const { return noise_std_; }
  const Eigen::MatrixXd& centroids() const { return centroids_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  // Average of the centroids, i.e. the mixture mean.
  const Eigen::VectorXd& mean() const { return mean_; }

  // P(Y = 1 | X_I = x_I), computed with a max-shifted log-sum-exp.
  double Posterior(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const FeatureSet& subset) const;
  // The optimal mapping f'(x) = P(Y = 1 | X = x).
  double Posterior(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  ClassPosteriors Posteriors(const Eigen::Ref<const Eigen::VectorXd>& x,
                             const FeatureSet& subset) const;

  // Posterior for every subset with |I| <= max_order (default: all), sharing
  // per-axis squared-distance partial sums across subsets. Requires n <= 24.
  SubsetValues PosteriorTable(const Eigen::Ref<const Eigen::VectorXd>& x,
                              int max_order = -1) const;

  // Analytic gradient of f'.
  Eigen::VectorXd Gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  // Draws a component uniformly, then a Gaussian around it.
  std::vector<LabeledSample> Sample(Rng& rng, int count) const;

 private:
  void CheckPoint(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double PosteriorFromSquaredDistances(const Eigen::VectorXd& sq) const;

  Eigen::MatrixXd centroids_;
  Eigen::VectorXd labels_;
  Eigen::VectorXd mean_;
  double noise_std_ = 0.0;
  double inv_two_var_ = 0.0;
};

// Max-class probability max(p, 1 - p), in [1/2, 1].
inline double AttrProb(double p) { return p > 0.5 ? p : 1.0 - p; }

// One minus the normalised binary entropy, in [0, 1]; 0 ln 0 is taken as 0.
double AttrEntropy(double p);

inline double AttrProb(const MixtureOracle& oracle,
                       const Eigen::Ref<const Eigen::VectorXd>& x,
                       const FeatureSet& subset) {
  return AttrProb(oracle.Posterior(x, subset));
}
inline double AttrEntropy(const MixtureOracle& oracle,
                          const Eigen::Ref<const Eigen::VectorXd>& x,
                          const FeatureSet& subset) {
  return AttrEntropy(oracle.Posterior(x, subset));
}

// Membership in the relaxed domain A_I^eta for a max-class probability.
inline bool InRelaxedDomain(double attr_prob, double eta) { return attr_prob >= eta; }

}  // namespace fattr

#endif  // FATTR_ORACLE_H_
