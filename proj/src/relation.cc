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

#include "fattr/relation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fattr {

LabeledRelation::LabeledRelation(const Eigen::MatrixXd& points,
                                 std::span<const int> labels) {
  if (static_cast<std::size_t>(points.rows()) != labels.size()) {
    throw ArgumentError("LabeledRelation: " + std::to_string(points.rows()) +
                        " points but " + std::to_string(labels.size()) +
                        " labels");
  }
  if (labels.empty()) throw ArgumentError("LabeledRelation: empty relation");
  if (points.cols() < 1 || points.cols() > kMaxDims) {
    throw ArgumentError("LabeledRelation: dimension outside [1, 32]");
  }
  if (!points.allFinite()) {
    throw ArgumentError("LabeledRelation: non-finite coordinate");
  }

  std::vector<Eigen::Index> keep;
  keep.reserve(labels.size());
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    const bool duplicate = std::any_of(keep.begin(), keep.end(), [&](auto k) {
      return labels[k] == labels[r] && points.row(k) == points.row(r);
    });
    if (!duplicate) keep.push_back(r);
  }
  points_.resize(static_cast<Eigen::Index>(keep.size()), points.cols());
  labels_.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    points_.row(static_cast<Eigen::Index>(i)) = points.row(keep[i]);
    labels_.push_back(labels[keep[i]]);
  }
}

PointSet ProjectionGroup(const LabeledRelation& relation, std::size_t j,
                         const FeatureSet& subset) {
  if (subset.dims() != relation.dims()) {
    throw ArgumentError("ProjectionGroup: dimension mismatch");
  }
  PointSet group;
  const auto pj = relation.point(j);
  for (std::size_t k = 0; k < relation.size(); ++k) {
    if (SameProjection(pj, relation.point(k), subset)) group.push_back(k);
  }
  return group;
}

bool IsFunctionalAt(const LabeledRelation& relation, std::size_t j,
                    const FeatureSet& subset) {
  if (subset.dims() != relation.dims()) {
    throw ArgumentError("IsFunctionalAt: dimension mismatch");
  }
  const auto pj = relation.point(j);
  const int yj = relation.label(j);
  for (std::size_t k = 0; k < relation.size(); ++k) {
    if (relation.label(k) != yj && SameProjection(pj, relation.point(k), subset)) {
      return false;
    }
  }
  return true;
}

PointSet FunctionalDomain(const LabeledRelation& relation,
                          const FeatureSet& subset) {
  if (subset.dims() != relation.dims()) {
    throw ArgumentError("FunctionalDomain: dimension mismatch");
  }
  const std::vector<int> axes = subset.Indices();
  const auto less = [&](std::size_t a, std::size_t b) {
    for (int i : axes) {
      const double va = relation.points()(static_cast<Eigen::Index>(a), i);
      const double vb = relation.points()(static_cast<Eigen::Index>(b), i);
      if (va != vb) return va < vb;
    }
    return false;
  };

  std::vector<std::size_t> order(relation.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), less);

  PointSet domain;
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && !less(order[begin], order[end])) ++end;
    const int y = relation.label(order[begin]);
    const bool single = std::all_of(order.begin() + begin, order.begin() + end,
                                    [&](auto k) { return relation.label(k) == y; });
    if (single) domain.insert(domain.end(), order.begin() + begin, order.begin() + end);
    begin = end;
  }
  std::sort(domain.begin(), domain.end());
  return domain;
}

}  // namespace fattr
