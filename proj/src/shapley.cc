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

#include "fattr/shapley.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "fattr/errors.h"

namespace fattr {
namespace {

void CheckDims(int n) {
  if (n < 1 || n > 32) throw ArgumentError("shapley: dimension outside [1, 32]");
}

}  // namespace

ShapleyEstimate ExactShapley(int n, const ValueFunction& v) {
  CheckDims(n);
  if (n > 20) throw ArgumentError("shapley: exact mode needs n <= 20");
  const std::uint32_t count = 1u << n;
  std::vector<double> table(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) table[mask] = v(mask);

  // weight[s] = s! (n-s-1)! / n! = 1 / (n * C(n-1, s))
  std::vector<double> weight(n);
  double binom = 1.0;
  for (int s = 0; s < n; ++s) {
    weight[s] = 1.0 / (n * binom);
    binom = binom * (n - 1 - s) / (s + 1);
  }

  ShapleyEstimate out;
  out.values = Eigen::VectorXd::Zero(n);
  out.std_errors = Eigen::VectorXd::Zero(n);
  out.exact = true;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const double w = weight[std::min(std::popcount(mask), n - 1)];
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bit = 1u << i;
      if (mask & bit) continue;
      out.values(i) += w * (table[mask | bit] - table[mask]);
    }
  }
  return out;
}

ShapleyEstimate PermutationShapley(int n, const ValueFunction& v,
                                   int permutations, Rng& rng) {
  CheckDims(n);
  if (permutations < 1) throw ArgumentError("shapley: permutations must be >= 1");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(n);
  const double empty_value = v(0);
  for (int p = 0; p < permutations; ++p) {
    std::shuffle(order.begin(), order.end(), rng);
    std::uint32_t mask = 0;
    double prev = empty_value;
    for (int i : order) {
      mask |= 1u << i;
      const double cur = v(mask);
      const double delta = cur - prev;
      sum(i) += delta;
      sum_sq(i) += delta * delta;
      prev = cur;
    }
  }
  ShapleyEstimate out;
  out.permutations = permutations;
  out.values = sum / permutations;
  out.std_errors.resize(n);
  for (int i = 0; i < n; ++i) {
    if (permutations < 2) {
      out.std_errors(i) = std::numeric_limits<double>::infinity();
      continue;
    }
    const double var = std::max(
        0.0, (sum_sq(i) - permutations * out.values(i) * out.values(i)) /
                 (permutations - 1));
    out.std_errors(i) = std::sqrt(var / permutations);
  }
  return out;
}

ShapleyEstimate ShapleyValues(int n, const ValueFunction& v, int max_samples,
                              Rng& rng) {
  CheckDims(n);
  if (max_samples < 1) throw ArgumentError("shapley: max_samples must be >= 1");
  if (n <= 20 && (std::uint64_t{1} << n) <= static_cast<std::uint64_t>(max_samples)) {
    return ExactShapley(n, v);
  }
  return PermutationShapley(n, v, max_samples, rng);
}

}  // namespace fattr
