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

#ifndef FATTR_SELECTION_H_
#define FATTR_SELECTION_H_

#include <cstddef>
#include <vector>

#include "fattr/feature_set.h"
#include "fattr/relation.h"

namespace fattr {

// All subsets of minimal cardinality satisfying a functionality constraint.
// Members are listed in ascending bitmask order.
struct SelectionSolution {
  std::vector<FeatureSet> minimal_sets;
  int cardinality = 0;

  bool unique() const { return minimal_sets.size() == 1; }
};

// Every minimal-cardinality subset I with point j in A_I(R). Enumerates
// cardinalities upward and stops at the first one with a hit, which is valid
// because functionality domains only grow with the subset.
// Throws NotFunctionalError if point j carries two labels.
SelectionSolution SolveInstanceSelection(const LabeledRelation& relation,
                                         std::size_t j);

// Every minimal-cardinality subset J with all points in A_J(R).
// Throws NotFunctionalError if the relation is not a function.
SelectionSolution SolveGlobalSelection(const LabeledRelation& relation);

struct Property1Result {
  std::vector<bool> verified;
  double rate = 0.0;
};

// Complementary-dependence check on predicted selections: point j is verified
// iff every point k sharing j's projection onto predicted[j] has
// predicted[k] contained in predicted[j].
Property1Result CheckProperty1(const LabeledRelation& relation,
                               const std::vector<FeatureSet>& predicted);

// domains[mask] is the functionality domain for the subset with that bitmask.
using DomainTable = std::vector<PointSet>;

// Functionality domains for all 2^n subsets. Requires n <= 12.
DomainTable ComputeAllDomains(const LabeledRelation& relation);

// Dependence hierarchy: true iff domains[I] is contained in domains[J] for
// every pair I subset of J.
bool CheckProperty2(const DomainTable& domains, int n);
bool CheckProperty2(const LabeledRelation& relation);

// True iff the relation assigns a single label to every stored point.
bool IsFunction(const LabeledRelation& relation);

}  // namespace fattr

#endif  // FATTR_SELECTION_H_
