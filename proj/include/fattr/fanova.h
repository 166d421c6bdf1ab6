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

#ifndef FATTR_FANOVA_H_
#define FATTR_FANOVA_H_

#include <map>
#include <vector>

#include <Eigen/Core>

#include "fattr/feature_set.h"

namespace fattr {

// Functional ANOVA of a function tabulated on a full Cartesian grid with
// uniform weights. components[I] holds f_I evaluated at every input point (in
// input order); f_I depends only on the coordinates in I, integrates to zero
// along each of its own axes, and the components sum to f.
struct FanovaDecomposition {
  std::vector<std::vector<double>> levels;  // sorted distinct values per axis
  std::map<FeatureSet, Eigen::VectorXd> components;
};

// `points` holds one grid point per row, `values` the function there. The grid
// must be a full product with every combination present once; n <= 4 and at
// most 4 levels per axis. Throws ArgumentError otherwise.
FanovaDecomposition FanovaDecompose(const Eigen::MatrixXd& points,
                                    const Eigen::VectorXd& values);

}  // namespace fattr

#endif  // FATTR_FANOVA_H_
