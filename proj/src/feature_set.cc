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

#include "fattr/feature_set.h"

#include <string>
#include <vector>

namespace fattr {

FeatureSet FeatureSet::FromIndices(const std::vector<int>& indices, int n) {
  FeatureSet s = Empty(n);
  for (int i : indices) {
    if (i < 0 || i >= n) {
      throw ArgumentError("FeatureSet: index " + std::to_string(i) +
                          " out of range for n=" + std::to_string(n));
    }
    s = s.With(i);
  }
  return s;
}

std::vector<int> FeatureSet::Indices() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b));
  }
  return out;
}

std::string FeatureSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int i : Indices()) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

void ForEachSubsetOfSize(int n, int k,
                         const std::function<void(FeatureSet)>& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(FeatureSet::Empty(n));
    return;
  }
  for (std::uint64_t mask = (std::uint64_t{1} << k) - 1; mask != 0;
       mask = NextSamePopcount(mask, n)) {
    fn(FeatureSet(static_cast<std::uint32_t>(mask), n));
  }
}

}  // namespace fattr
