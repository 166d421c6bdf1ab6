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

#ifndef FATTR_RELATION_H_
#define FATTR_RELATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fattr/errors.h"
#include "fattr/feature_set.h"

namespace fattr {

using Point = Eigen::VectorXd;

// Sorted, duplicate-free list of point indices into a relation.
using PointSet = std::vector<std::size_t>;

// Canonical projection: keeps the coordinates indexed by `subset` and zeroes
// the others.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> Project(
    const Eigen::MatrixBase<Derived>& x, const FeatureSet& subset) {
  if (x.size() != subset.dims()) {
    throw ArgumentError("Project: point has " + std::to_string(x.size()) +
                        " coordinates, subset indexes " +
                        std::to_string(subset.dims()));
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>::Zero(x.size());
  for (int i : subset.Indices()) out(i) = x(i);
  return out;
}

// True iff `a` and `b` agree exactly on every coordinate of `subset`.
template <typename DerivedA, typename DerivedB>
bool SameProjection(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b,
                    const FeatureSet& subset) {
  for (std::uint32_t bits = subset.bits(); bits != 0; bits &= bits - 1) {
    const int i = std::countr_zero(bits);
    if (a(i) != b(i)) return false;
  }
  return true;
}

// A finite set of (point, label) pairs. Duplicate pairs are dropped on
// construction; the same point may appear with several labels, which is what
// makes a relation non-functional there.
class LabeledRelation {
 public:
  // `points` holds one point per row. Throws ArgumentError on size mismatch,
  // empty input, non-finite coordinates, or n outside [1, 32].
  LabeledRelation(const Eigen::MatrixXd& points, std::span<const int> labels);

  int dims() const { return static_cast<int>(points_.cols()); }
  std::size_t size() const { return labels_.size(); }
  const Eigen::MatrixXd& points() const { return points_; }
  auto point(std::size_t j) const {
    return points_.row(static_cast<Eigen::Index>(j));
  }
  int label(std::size_t j) const { return labels_[j]; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  Eigen::MatrixXd points_;
  std::vector<int> labels_;
};

// Indices of every point of `relation` sharing the projection of point `j`
// onto `subset` (including j itself).
PointSet ProjectionGroup(const LabeledRelation& relation, std::size_t j,
                         const FeatureSet& subset);

// True iff every point sharing point j's projection onto `subset` carries
// point j's label.
bool IsFunctionalAt(const LabeledRelation& relation, std::size_t j,
                    const FeatureSet& subset);

// The functionality domain A_I(R) restricted to the stored points: indices j
// such that all points with the same projection onto `subset` share a label.
PointSet FunctionalDomain(const LabeledRelation& relation,
                          const FeatureSet& subset);

}  // namespace fattr

#endif  // FATTR_RELATION_H_
