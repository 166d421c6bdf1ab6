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

#ifndef FATTR_SHAPLEY_H_
#define FATTR_SHAPLEY_H_

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "fattr/random.h"

namespace fattr {

// Set function over subsets of [n], keyed by bitmask.
using ValueFunction = std::function<double(std::uint32_t)>;

struct ShapleyEstimate {
  Eigen::VectorXd values;
  // Standard error of each value; zero in exact mode.
  Eigen::VectorXd std_errors;
  bool exact = false;
  int permutations = 0;
};

// Subset-weighted exact formula, 2^n evaluations of v. Requires n <= 20.
ShapleyEstimate ExactShapley(int n, const ValueFunction& v);

// Average marginal contribution over `permutations` uniformly random
// orderings. Requires permutations >= 1.
ShapleyEstimate PermutationShapley(int n, const ValueFunction& v,
                                   int permutations, Rng& rng);

// Exact when 2^n <= max_samples, otherwise max_samples permutations.
ShapleyEstimate ShapleyValues(int n, const ValueFunction& v, int max_samples,
                              Rng& rng);

}  // namespace fattr

#endif  // FATTR_SHAPLEY_H_
