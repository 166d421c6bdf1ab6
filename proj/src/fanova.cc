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

#include "fattr/fanova.h"

#include <algorithm>
#include <set>

#include "fattr/errors.h"
#include "fattr/relation.h"

namespace fattr {

FanovaDecomposition FanovaDecompose(const Eigen::MatrixXd& points,
                                    const Eigen::VectorXd& values) {
  const int n = static_cast<int>(points.cols());
  const Eigen::Index m = points.rows();
  if (values.size() != m) throw ArgumentError("FanovaDecompose: size mismatch");
  if (n < 1 || n > 4) throw ArgumentError("FanovaDecompose: n must be in [1, 4]");

  FanovaDecomposition out;
  std::size_t expected = 1;
  for (int i = 0; i < n; ++i) {
    std::set<double> axis(points.col(i).data(), points.col(i).data() + m);
    if (axis.size() > 4) throw ArgumentError("FanovaDecompose: more than 4 levels");
    out.levels.emplace_back(axis.begin(), axis.end());
    expected *= axis.size();
  }
  std::set<std::vector<double>> seen;
  for (Eigen::Index r = 0; r < m; ++r) {
    seen.insert(std::vector<double>(points.row(r).begin(), points.row(r).end()));
  }
  if (seen.size() != static_cast<std::size_t>(m) ||
      static_cast<std::size_t>(m) != expected) {
    throw ArgumentError("FanovaDecompose: points do not form a full product grid");
  }

  // Ascending bitmask order visits every strict subset before its supersets.
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const FeatureSet subset(mask, n);
    Eigen::VectorXd component(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      double sum = 0.0;
      int count = 0;
      for (Eigen::Index k = 0; k < m; ++k) {
        if (SameProjection(points.row(r), points.row(k), subset)) {
          sum += values(k);
          ++count;
        }
      }
      component(r) = sum / count;
    }
    for (const auto& [lower, values_lower] : out.components) {
      if (lower != subset && lower.IsSubsetOf(subset)) component -= values_lower;
    }
    out.components.emplace(subset, std::move(component));
  }
  return out;
}

}  // namespace fattr
