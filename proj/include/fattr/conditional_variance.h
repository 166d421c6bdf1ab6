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

#ifndef FATTR_CONDITIONAL_VARIANCE_H_
#define FATTR_CONDITIONAL_VARIANCE_H_

#include <string>

#include <Eigen/Core>

#include "fattr/feature_set.h"

namespace fattr {

// Two-dimensional regression demos with X uniform on [-1, 1]^2 and
// Y = X1 + alpha * X2 + eps, eps ~ N(0, noise_var).
struct DemoDensity {
  enum class Kind {
    kTiltedLinear,   // Y = X1 + alpha X2
    kAdditiveNoise,  // Y = X1 + eps
  };
  Kind kind = Kind::kTiltedLinear;
  double alpha = 0.0;
  double noise_var = 0.0;

  static DemoDensity TiltedLinear(double alpha) {
    return {Kind::kTiltedLinear, alpha, 0.0};
  }
  static DemoDensity AdditiveNoise(double noise_var) {
    return {Kind::kAdditiveNoise, 0.0, noise_var};
  }
};

// "tilted_linear" (parameter alpha) or "additive_noise" (parameter noise
// variance). Throws ArgumentError for any other name.
DemoDensity ParseDemoDensity(const std::string& name, double parameter);

// Var[Y | X_I = x_I] in closed form. Throws ArgumentError if `subset` is not
// two-dimensional or the density parameters are invalid.
double ConditionalVariance(const DemoDensity& density, const Eigen::Vector2d& x,
                           const FeatureSet& subset);

// Precision-style attribution 1 / Var; infinite where the variance vanishes.
double PrecisionAttribution(double variance);

// x lies in A_I^eta iff its conditional variance is at most eta.
inline bool InVarianceDomain(double variance, double eta) { return variance <= eta; }

}  // namespace fattr

#endif  // FATTR_CONDITIONAL_VARIANCE_H_
