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

#ifndef FATTR_PROXY_SETS_H_
#define FATTR_PROXY_SETS_H_

#include "fattr/feature_set.h"
#include "fattr/relation.h"

namespace fattr {

// Tolerance for comparing a label with a conditional mean of labels.
inline constexpr double kBaselineTolerance = 1e-9;

// Proxy point sets on a single-valued relation f, both defined by varying the
// coordinates in I while holding the complement fixed:
//   alternate (B_I): some point with the same complement projection has a
//     different label, so B_I is the complement of A_{complement(I)};
//   baseline (C_I): f(x) differs from the mean of f over the points sharing
//     x's complement projection.
// C_I is contained in B_I, and A_I is contained in complement(C_{complement(I)}).
struct ProxySets {
  PointSet alternate;
  PointSet baseline;
};

// Throws NotFunctionalError if the relation is not single-valued.
ProxySets ComputeProxySets(const LabeledRelation& relation, const FeatureSet& subset);

// Indices in [0, size) not in `set` (which must be sorted).
PointSet ComplementOf(const PointSet& set, std::size_t size);

}  // namespace fattr

#endif  // FATTR_PROXY_SETS_H_
