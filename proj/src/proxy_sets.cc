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

#include "fattr/proxy_sets.h"

#include <cmath>

#include "fattr/selection.h"

namespace fattr {

PointSet ComplementOf(const PointSet& set, std::size_t size) {
  PointSet out;
  std::size_t next = 0;
  for (std::size_t j = 0; j < size; ++j) {
    if (next < set.size() && set[next] == j) {
      ++next;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

ProxySets ComputeProxySets(const LabeledRelation& relation,
                           const FeatureSet& subset) {
  if (subset.dims() != relation.dims()) {
    throw ArgumentError("ComputeProxySets: dimension mismatch");
  }
  if (!IsFunction(relation)) {
    throw NotFunctionalError("ComputeProxySets: relation is not a function");
  }
  const FeatureSet fixed = subset.Complement();
  ProxySets sets;
  for (std::size_t j = 0; j < relation.size(); ++j) {
    const PointSet group = ProjectionGroup(relation, j, fixed);
    double sum = 0.0;
    bool alternate = false;
    for (std::size_t k : group) {
      sum += relation.label(k);
      alternate = alternate || relation.label(k) != relation.label(j);
    }
    const double mean = sum / static_cast<double>(group.size());
    if (alternate) sets.alternate.push_back(j);
    if (std::abs(relation.label(j) - mean) > kBaselineTolerance) {
      sets.baseline.push_back(j);
    }
  }
  return sets;
}

}  // namespace fattr
