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

#include "fattr/oracle.h"

#include <cmath>
#include <string>

#include "fattr/errors.h"

namespace fattr {

namespace {

Eigen::MatrixXd CentroidMatrix(const Task& task) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(task.m()), task.n);
  for (std::size_t j = 0; j < task.m(); ++j) {
    out.row(static_cast<Eigen::Index>(j)) = task.centroids[j].coords.transpose();
  }
  return out;
}

std::vector<int> CentroidLabels(const Task& task) {
  std::vector<int> out;
  for (const Centroid& c : task.centroids) out.push_back(c.label);
  return out;
}

}  // namespace

MixtureOracle::MixtureOracle(const Task& task)
    : MixtureOracle(CentroidMatrix(task), CentroidLabels(task), task.noise_std) {}

MixtureOracle::MixtureOracle(Eigen::MatrixXd centroids,
                             const std::vector<int>& labels, double noise_std)
    : centroids_(std::move(centroids)), noise_std_(noise_std) {
  if (centroids_.rows() == 0 || centroids_.cols() == 0) {
    throw ArgumentError("MixtureOracle: no centroids");
  }
  if (static_cast<std::size_t>(centroids_.rows()) != labels.size()) {
    throw ArgumentError("MixtureOracle: label count differs from centroid count");
  }
  if (!(noise_std > 0.0)) throw ArgumentError("MixtureOracle: noise_std must be > 0");
  labels_.resize(centroids_.rows());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] != 0 && labels[j] != 1) {
      throw ArgumentError("MixtureOracle: labels must be binary");
    }
    labels_(static_cast<Eigen::Index>(j)) = labels[j];
  }
  mean_ = centroids_.colwise().mean().transpose();
  inv_two_var_ = 1.0 / (2.0 * noise_std * noise_std);
}

void MixtureOracle::CheckPoint(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dims()) {
    throw ArgumentError("MixtureOracle: point has " + std::to_string(x.size()) +
                        " coordinates, expected " + std::to_string(dims()));
  }
}

double MixtureOracle::PosteriorFromSquaredDistances(const Eigen::VectorXd& sq) const {
  const double min_sq = sq.minCoeff();
  const Eigen::ArrayXd w = (-(sq.array() - min_sq) * inv_two_var_).exp();
  return (w * labels_.array()).sum() / w.sum();
}

double MixtureOracle::Posterior(const Eigen::Ref<const Eigen::VectorXd>& x,
                                const FeatureSet& subset) const {
  CheckPoint(x);
  if (subset.dims() != dims()) throw ArgumentError("MixtureOracle: subset dimension");
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(size());
  for (int i : subset.Indices()) {
    sq.array() += (centroids_.col(i).array() - x(i)).square();
  }
  return PosteriorFromSquaredDistances(sq);
}

double MixtureOracle::Posterior(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return Posterior(x, FeatureSet::Full(dims()));
}

ClassPosteriors MixtureOracle::Posteriors(const Eigen::Ref<const Eigen::VectorXd>& x,
                                          const FeatureSet& subset) const {
  CheckPoint(x);
  Eigen::ArrayXd sq = Eigen::ArrayXd::Zero(size());
  for (int i : subset.Indices()) sq += (centroids_.col(i).array() - x(i)).square();
  const Eigen::ArrayXd w = (-(sq - sq.minCoeff()) * inv_two_var_).exp();
  const double total = w.sum();
  ClassPosteriors out;
  out.positive = (w * labels_.array()).sum() / total;
  out.negative = (w * (1.0 - labels_.array())).sum() / total;
  return out;
}

SubsetValues MixtureOracle::PosteriorTable(const Eigen::Ref<const Eigen::VectorXd>& x,
                                           int max_order) const {
  CheckPoint(x);
  const int n = dims();
  if (n > 24) throw ArgumentError("PosteriorTable: n > 24");
  if (max_order < 0 || max_order > n) max_order = n;
  const Eigen::MatrixXd axis_sq =
      (centroids_.rowwise() - x.transpose()).array().square().matrix();

  SubsetValues table(n);
  // Depth-first over subsets, adding axes in ascending order so that each
  // entry sums the same terms, in the same order, as Posterior(x, I).
  std::vector<Eigen::VectorXd> level(static_cast<std::size_t>(max_order) + 1,
                                     Eigen::VectorXd::Zero(size()));
  const auto visit = [&](const auto& self, std::uint32_t mask, int next_axis,
                         std::size_t depth) -> void {
    table[mask] = PosteriorFromSquaredDistances(level[depth]);
    if (depth == static_cast<std::size_t>(max_order)) return;
    for (int axis = next_axis; axis < n; ++axis) {
      level[depth + 1] = level[depth] + axis_sq.col(axis);
      self(self, mask | (1u << axis), axis + 1, depth + 1);
    }
  };
  visit(visit, 0u, 0, 0);
  return table;
}

Eigen::VectorXd MixtureOracle::Gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  CheckPoint(x);
  const Eigen::VectorXd sq = (centroids_.rowwise() - x.transpose()).rowwise().squaredNorm();
  const Eigen::ArrayXd w = (-(sq.array() - sq.minCoeff()) * inv_two_var_).exp();
  const Eigen::ArrayXd r = w / w.sum();
  const double f = (r * labels_.array()).sum();
  // d f / d x = sum_j r_j (y_j - f) (c_j - x) / s^2
  const Eigen::VectorXd coeff = (r * (labels_.array() - f)).matrix();
  return (centroids_.transpose() * coeff - coeff.sum() * x) * (2.0 * inv_two_var_);
}

std::vector<LabeledSample> MixtureOracle::Sample(Rng& rng, int count) const {
  if (count < 1) throw ArgumentError("Sample: count must be >= 1");
  std::uniform_int_distribution<Eigen::Index> pick(0, size() - 1);
  std::normal_distribution<double> normal(0.0, noise_std_);
  std::vector<LabeledSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const Eigen::Index j = pick(rng);
    LabeledSample sample;
    sample.x = centroids_.row(j).transpose();
    for (Eigen::Index i = 0; i < sample.x.size(); ++i) sample.x(i) += normal(rng);
    sample.label = static_cast<int>(labels_(j));
    out.push_back(std::move(sample));
  }
  return out;
}

double AttrEntropy(double p) {
  const auto plogp = [](double q) { return q > 0.0 ? q * std::log(q) : 0.0; };
  return 1.0 - (plogp(p) + plogp(1.0 - p)) / std::log(0.5);
}

}  // namespace fattr
