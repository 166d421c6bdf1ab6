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

#ifndef FATTR_FEATURE_SET_H_
#define FATTR_FEATURE_SET_H_

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fattr/errors.h"

namespace fattr {

// Maximum number of input dimensions a FeatureSet can index.
inline constexpr int kMaxDims = 32;

// A subset of the input indices {0, ..., n-1}, stored as a bitmask. Bit k set
// means feature k (1-based index k+1 in reports and files) is selected.
class FeatureSet {
 public:
  FeatureSet() = default;

  // Throws ArgumentError if n is out of [1, kMaxDims] or `bits` has a bit at
  // position >= n.
  FeatureSet(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 1 || n > kMaxDims) {
      throw ArgumentError("FeatureSet: dimension " + std::to_string(n) +
                          " outside [1, 32]");
    }
    if ((bits & ~FullMask(n)) != 0) {
      throw ArgumentError("FeatureSet: bit set at position >= n");
    }
  }

  static FeatureSet Empty(int n) { return FeatureSet(0u, n); }
  static FeatureSet Full(int n) { return FeatureSet(FullMask(n), n); }
  static FeatureSet Singleton(int index, int n) {
    if (index < 0 || index >= n) {
      throw ArgumentError("FeatureSet: index out of range");
    }
    return FeatureSet(1u << index, n);
  }
  // Builds a set from 0-based indices.
  static FeatureSet FromIndices(const std::vector<int>& indices, int n);

  static constexpr std::uint32_t FullMask(int n) {
    return n >= 32 ? 0xFFFFFFFFu : ((1u << n) - 1u);
  }

  std::uint32_t bits() const { return bits_; }
  int dims() const { return n_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int index) const {
    return index >= 0 && index < n_ && ((bits_ >> index) & 1u) != 0;
  }

  bool IsSubsetOf(const FeatureSet& other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  FeatureSet Complement() const { return FeatureSet(~bits_ & FullMask(n_), n_); }
  FeatureSet With(int index) const { return FeatureSet(bits_ | (1u << index), n_); }
  FeatureSet Without(int index) const {
    return FeatureSet(bits_ & ~(1u << index), n_);
  }
  FeatureSet Union(const FeatureSet& other) const {
    return FeatureSet(bits_ | other.bits_, n_);
  }
  FeatureSet Intersection(const FeatureSet& other) const {
    return FeatureSet(bits_ & other.bits_, n_);
  }

  // 0-based member indices in ascending order.
  std::vector<int> Indices() const;

  // "{1,3}" using 1-based indices.
  std::string ToString() const;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
  friend auto operator<=>(const FeatureSet& a, const FeatureSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint32_t bits_ = 0;
  int n_ = 1;
};

// Calls fn(FeatureSet) for every subset of [n] of cardinality `k`, in
// ascending bitmask order.
void ForEachSubsetOfSize(int n, int k, const std::function<void(FeatureSet)>& fn);

// Next mask with the same popcount (Gosper's hack). Returns 0 once the masks
// of the given popcount below 2^n are exhausted.
inline std::uint64_t NextSamePopcount(std::uint64_t mask, int n) {
  const std::uint64_t c = mask & (~mask + 1);
  const std::uint64_t r = mask + c;
  const std::uint64_t next = (((r ^ mask) >> 2) / c) | r;
  return next >> n ? 0 : next;
}

}  // namespace fattr

template <>
struct std::hash<fattr::FeatureSet> {
  std::size_t operator()(const fattr::FeatureSet& s) const noexcept {
    return std::hash<std::uint64_t>()((std::uint64_t{s.bits()} << 6) |
                                      static_cast<std::uint64_t>(s.dims()));
  }
};

#endif  // FATTR_FEATURE_SET_H_
