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

#ifndef FATTR_TASK_H_
#define FATTR_TASK_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fattr/feature_set.h"
#include "fattr/random.h"
#include "fattr/relation.h"

namespace fattr {

inline constexpr char kGeneratorVersion[] = "fattr-taskgen/1";

// Coordinates live on the grid (s + 1/2) * sigma for integer slots s in
// [-half_width, half_width). Occupancy tracks which slots are taken on each
// axis so that different hypercubes never share a coordinate value.
class Occupancy {
 public:
  Occupancy(int n, int half_width);

  int dims() const { return static_cast<int>(used_.size()); }
  int half_width() const { return half_width_; }
  int FreeCount(int axis) const;
  // Picks `count` distinct free slots on `axis` uniformly at random, marks
  // them used, and returns them in ascending order. Throws CapacityError.
  std::vector<int> Take(int axis, int count, Rng& rng);
  bool IsUsed(int axis, int slot) const;
  void Release(int axis, int slot);

 private:
  int half_width_;
  std::vector<std::vector<bool>> used_;
};

inline double SlotValue(int slot, double sigma) { return (slot + 0.5) * sigma; }

// An axis-aligned hypercube on the axes of `axes`, two-coloured by label.
struct Hypercube {
  FeatureSet axes;
  std::vector<int> axis_order;                     // 0-based members of axes
  std::vector<std::pair<double, double>> anchors;  // (low, high) per axis_order
  Eigen::VectorXd fixed_coords;                    // value on every axis; axes
                                                   // in `axes` hold the low one
  int parity = 0;                                  // label of the all-low corner
  std::vector<std::vector<int>> slots;             // grid slots taken per axis
};

struct CubeVertex {
  Point coords;
  int label = 0;
  // Bit t set means axis axis_order[t] sits at its high value.
  std::uint32_t corner = 0;
};

struct BuiltHypercube {
  Hypercube cube;
  std::vector<CubeVertex> vertices;  // ordered by corner
};

// Builds the 2^|axes| vertices of a cube with coordinates drawn from free
// slots of `occupancy` (two per cube axis, one per remaining axis) and labels
// parity(corner) XOR cube.parity, so every edge joins opposite labels.
BuiltHypercube BuildHypercube(const FeatureSet& axes, double sigma,
                              Occupancy& occupancy, Rng& rng);

struct Erosion {
  std::vector<std::size_t> survivors;       // vertex indices, ascending
  std::vector<FeatureSet> neighbor_axes;    // per survivor: axes with a
                                            // surviving one-step neighbour
  std::vector<bool> isolated;               // neighbor_axes empty
};

// Neighbour axes after deleting the vertices flagged in `erased`.
Erosion ErodeWith(const BuiltHypercube& built, const std::vector<bool>& erased);

// Deletes each vertex independently with probability `erase_prob` in [0, 1).
Erosion Erode(const BuiltHypercube& built, double erase_prob, Rng& rng);

struct Centroid {
  Point coords;
  int label = 0;
  FeatureSet selection;
  int hypercube = 0;
};

struct Task {
  std::string id;
  int n = 0;
  double sigma = 0.0;
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  std::string generator_version = kGeneratorVersion;
  std::vector<Centroid> centroids;

  std::size_t m() const { return centroids.size(); }
};

struct TaskConfig {
  int max_cubes = 0;       // <= 0 means n + 2
  int max_cube_dim = 0;    // <= 0 means n; 1 gives the univariate family
  double erase_prob = 0.3;
  double sigma = 0.25;
  double noise_ratio = 0.5;
  int erosion_retries = 32;  // per cube draw
  int cube_retries = 32;     // fresh cube draws per cube before a task restart
  int task_retries = 16;
};

// Samples hypercubes with disjoint occupancy, erodes them, packs each axis's
// occupied coordinates onto consecutive grid steps, and validates every
// centroid against the exact instance-wise solver: the solver must return a
// single minimal subset equal to the centroid's neighbour axes. Failing
// erosions are redrawn, then the cube, then the whole task. Throws
// GenerationError when the retry budget runs out.
Task GenerateTask(int n, const TaskConfig& config, std::uint64_t seed,
                  const std::string& id = "");

// Centroids and labels as a finite relation.
LabeledRelation TaskToRelation(const Task& task);

// Re-runs the exact solver on every centroid; returns the indices whose
// stored selection is not the unique minimum.
std::vector<std::size_t> FindInvalidSelections(const Task& task);

}  // namespace fattr

#endif  // FATTR_TASK_H_
