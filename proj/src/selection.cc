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

#include "fattr/selection.h"

#include <algorithm>
#include <string>

namespace fattr {
namespace {

void RequireFunctional(const LabeledRelation& relation, std::size_t j) {
  if (!IsFunctionalAt(relation, j, FeatureSet::Full(relation.dims()))) {
    throw NotFunctionalError("point " + std::to_string(j) +
                             " carries contradicting labels");
  }
}

}  // namespace

bool IsFunction(const LabeledRelation& relation) {
  return FunctionalDomain(relation, FeatureSet::Full(relation.dims())).size() ==
         relation.size();
}

SelectionSolution SolveInstanceSelection(const LabeledRelation& relation,
                                         std::size_t j) {
  if (j >= relation.size()) throw ArgumentError("SolveInstanceSelection: bad index");
  RequireFunctional(relation, j);
  const int n = relation.dims();
  SelectionSolution solution;
  for (int k = 0; k <= n; ++k) {
    ForEachSubsetOfSize(n, k, [&](FeatureSet subset) {
      if (IsFunctionalAt(relation, j, subset)) {
        solution.minimal_sets.push_back(subset);
      }
    });
    if (!solution.minimal_sets.empty()) {
      solution.cardinality = k;
      return solution;
    }
  }
  // Unreachable: the full set passed RequireFunctional.
  throw NotFunctionalError("SolveInstanceSelection: no feasible subset");
}

SelectionSolution SolveGlobalSelection(const LabeledRelation& relation) {
  if (!IsFunction(relation)) {
    throw NotFunctionalError("SolveGlobalSelection: relation is not a function");
  }
  const int n = relation.dims();
  SelectionSolution solution;
  for (int k = 0; k <= n; ++k) {
    ForEachSubsetOfSize(n, k, [&](FeatureSet subset) {
      if (FunctionalDomain(relation, subset).size() == relation.size()) {
        solution.minimal_sets.push_back(subset);
      }
    });
    if (!solution.minimal_sets.empty()) {
      solution.cardinality = k;
      return solution;
    }
  }
  throw NotFunctionalError("SolveGlobalSelection: no feasible subset");
}

Property1Result CheckProperty1(const LabeledRelation& relation,
                               const std::vector<FeatureSet>& predicted) {
  if (predicted.size() != relation.size()) {
    throw ArgumentError("CheckProperty1: predictions do not cover the relation");
  }
  Property1Result result;
  result.verified.resize(relation.size());
  std::size_t count = 0;
  for (std::size_t j = 0; j < relation.size(); ++j) {
    const FeatureSet& sj = predicted[j];
    bool ok = true;
    for (std::size_t k = 0; k < relation.size() && ok; ++k) {
      if (SameProjection(relation.point(j), relation.point(k), sj)) {
        ok = predicted[k].IsSubsetOf(sj);
      }
    }
    result.verified[j] = ok;
    count += ok ? 1 : 0;
  }
  result.rate = static_cast<double>(count) / static_cast<double>(relation.size());
  return result;
}

DomainTable ComputeAllDomains(const LabeledRelation& relation) {
  const int n = relation.dims();
  if (n > 12) throw ArgumentError("ComputeAllDomains: n > 12");
  DomainTable domains(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < domains.size(); ++mask) {
    domains[mask] = FunctionalDomain(relation, FeatureSet(mask, n));
  }
  return domains;
}

bool CheckProperty2(const DomainTable& domains, int n) {
  if (domains.size() != (std::size_t{1} << n)) {
    throw ArgumentError("CheckProperty2: table size is not 2^n");
  }
  for (std::uint32_t sup = 0; sup < domains.size(); ++sup) {
    // Every sub-mask of `sup`, including 0 and `sup` itself.
    for (std::uint32_t sub = sup;; sub = (sub - 1) & sup) {
      if (!std::includes(domains[sup].begin(), domains[sup].end(),
                         domains[sub].begin(), domains[sub].end())) {
        return false;
      }
      if (sub == 0) break;
    }
  }
  return true;
}

bool CheckProperty2(const LabeledRelation& relation) {
  return CheckProperty2(ComputeAllDomains(relation), relation.dims());
}

}  // namespace fattr
