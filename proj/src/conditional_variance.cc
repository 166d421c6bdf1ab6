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

#include "fattr/conditional_variance.h"

#include <cmath>
#include <limits>

#include "fattr/errors.h"

namespace fattr {

DemoDensity ParseDemoDensity(const std::string& name, double parameter) {
  if (name == "tilted_linear") return DemoDensity::TiltedLinear(parameter);
  if (name == "additive_noise") {
    if (!(parameter >= 0.0)) throw ArgumentError("additive_noise: variance must be >= 0");
    return DemoDensity::AdditiveNoise(parameter);
  }
  throw ArgumentError("unsupported density \"" + name + "\"");
}

double ConditionalVariance(const DemoDensity& density, const Eigen::Vector2d& x,
                           const FeatureSet& subset) {
  if (subset.dims() != 2) throw ArgumentError("ConditionalVariance: densities are 2-D");
  if (!x.allFinite()) throw ArgumentError("ConditionalVariance: non-finite point");
  double coef1 = 1.0;
  double coef2 = 0.0;
  double noise = 0.0;
  switch (density.kind) {
    case DemoDensity::Kind::kTiltedLinear:
      coef2 = density.alpha;
      break;
    case DemoDensity::Kind::kAdditiveNoise:
      if (!(density.noise_var >= 0.0)) {
        throw ArgumentError("ConditionalVariance: negative noise variance");
      }
      noise = density.noise_var;
      break;
    default:
      throw ArgumentError("ConditionalVariance: unsupported density");
  }
  // Each free uniform coordinate on [-1, 1] contributes coef^2 / 3; the value
  // of the conditioned coordinates does not matter for these linear maps.
  double variance = noise;
  if (!subset.contains(0)) variance += coef1 * coef1 / 3.0;
  if (!subset.contains(1)) variance += coef2 * coef2 / 3.0;
  return variance;
}

double PrecisionAttribution(double variance) {
  return variance > 0.0 ? 1.0 / variance : std::numeric_limits<double>::infinity();
}

}  // namespace fattr
