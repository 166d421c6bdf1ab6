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

#include "fattr/task.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "fattr/errors.h"
#include "fattr/selection.h"

namespace fattr {
namespace {

int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// A survivor must have a neighbour and be functional on its neighbour axes
// within the cube; other cubes never share a coordinate value, so this is
// equivalent to the check on the whole task for non-empty selections.
bool ErosionIsValid(const BuiltHypercube& built, const Erosion& erosion,
                    std::string* reason) {
  if (erosion.survivors.empty()) {
    *reason = "every vertex erased";
    return false;
  }
  std::vector<std::uint32_t> local_masks(erosion.survivors.size(), 0);
  for (std::size_t s = 0; s < erosion.survivors.size(); ++s) {
    if (erosion.isolated[s]) {
      *reason = "isolated centroid";
      return false;
    }
    for (std::size_t t = 0; t < built.cube.axis_order.size(); ++t) {
      if (erosion.neighbor_axes[s].contains(built.cube.axis_order[t])) {
        local_masks[s] |= 1u << t;
      }
    }
  }
  for (std::size_t s = 0; s < erosion.survivors.size(); ++s) {
    const CubeVertex& vs = built.vertices[erosion.survivors[s]];
    for (std::size_t o = 0; o < erosion.survivors.size(); ++o) {
      const CubeVertex& vo = built.vertices[erosion.survivors[o]];
      if (vo.label != vs.label && ((vs.corner ^ vo.corner) & local_masks[s]) == 0) {
        *reason = "opposite-label survivor shares the neighbour-axes projection";
        return false;
      }
    }
  }
  return true;
}

void ReleaseCube(const Hypercube& cube, Occupancy& occupancy) {
  for (std::size_t i = 0; i < cube.slots.size(); ++i) {
    for (int slot : cube.slots[i]) occupancy.Release(static_cast<int>(i), slot);
  }
}

// Maps the occupied coordinates of each axis, by rank, onto consecutive grid
// steps centred on the origin. Equalities between coordinates are preserved,
// so the exact relation is unchanged while the layout becomes equally spaced.
void PackCoordinates(std::vector<Centroid>& centroids, int n, double sigma) {
  for (int i = 0; i < n; ++i) {
    std::vector<double> values;
    for (const Centroid& c : centroids) values.push_back(c.coords(i));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const int offset = static_cast<int>(values.size()) / 2;
    for (Centroid& c : centroids) {
      const auto rank = std::lower_bound(values.begin(), values.end(), c.coords(i)) -
                        values.begin();
      c.coords(i) = SlotValue(static_cast<int>(rank) - offset, sigma);
    }
  }
}

}  // namespace

Occupancy::Occupancy(int n, int half_width)
    : half_width_(half_width),
      used_(static_cast<std::size_t>(n),
            std::vector<bool>(static_cast<std::size_t>(2 * half_width), false)) {}

int Occupancy::FreeCount(int axis) const {
  const auto& slots = used_.at(static_cast<std::size_t>(axis));
  return static_cast<int>(std::count(slots.begin(), slots.end(), false));
}

bool Occupancy::IsUsed(int axis, int slot) const {
  return used_.at(static_cast<std::size_t>(axis))
      .at(static_cast<std::size_t>(slot + half_width_));
}

void Occupancy::Release(int axis, int slot) {
  used_.at(static_cast<std::size_t>(axis)).at(static_cast<std::size_t>(slot + half_width_)) =
      false;
}

std::vector<int> Occupancy::Take(int axis, int count, Rng& rng) {
  auto& slots = used_.at(static_cast<std::size_t>(axis));
  std::vector<int> free;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (!slots[s]) free.push_back(static_cast<int>(s) - half_width_);
  }
  if (static_cast<int>(free.size()) < count) {
    throw CapacityError("no free coordinate slot on axis " +
                        std::to_string(axis + 1));
  }
  std::vector<int> taken;
  for (int c = 0; c < count; ++c) {
    const int pick = UniformInt(rng, 0, static_cast<int>(free.size()) - 1);
    taken.push_back(free[static_cast<std::size_t>(pick)]);
    free.erase(free.begin() + pick);
  }
  std::sort(taken.begin(), taken.end());
  for (int s : taken) slots[static_cast<std::size_t>(s + half_width_)] = true;
  return taken;
}

BuiltHypercube BuildHypercube(const FeatureSet& axes, double sigma,
                              Occupancy& occupancy, Rng& rng) {
  const int n = axes.dims();
  if (axes.empty()) throw ArgumentError("BuildHypercube: empty axis set");
  if (occupancy.dims() != n) throw ArgumentError("BuildHypercube: dimension mismatch");
  for (int i = 0; i < n; ++i) {
    if (occupancy.FreeCount(i) < (axes.contains(i) ? 2 : 1)) {
      throw CapacityError("no free coordinate slot on axis " + std::to_string(i + 1));
    }
  }

  BuiltHypercube built;
  Hypercube& cube = built.cube;
  cube.axes = axes;
  cube.axis_order = axes.Indices();
  cube.fixed_coords.resize(n);
  for (int i = 0; i < n; ++i) {
    cube.slots.push_back(occupancy.Take(i, axes.contains(i) ? 2 : 1, rng));
    const std::vector<int>& taken = cube.slots.back();
    if (axes.contains(i)) {
      cube.anchors.emplace_back(SlotValue(taken[0], sigma), SlotValue(taken[1], sigma));
    }
    cube.fixed_coords(i) = SlotValue(taken[0], sigma);
  }
  cube.parity = UniformInt(rng, 0, 1);

  const std::size_t d = cube.axis_order.size();
  for (std::uint32_t corner = 0; corner < (1u << d); ++corner) {
    CubeVertex v;
    v.coords = cube.fixed_coords;
    for (std::size_t t = 0; t < d; ++t) {
      const auto& [low, high] = cube.anchors[t];
      v.coords(cube.axis_order[t]) = ((corner >> t) & 1u) ? high : low;
    }
    v.corner = corner;
    v.label = (std::popcount(corner) & 1) ^ cube.parity;
    built.vertices.push_back(std::move(v));
  }
  return built;
}

Erosion ErodeWith(const BuiltHypercube& built, const std::vector<bool>& erased) {
  if (erased.size() != built.vertices.size()) {
    throw ArgumentError("ErodeWith: mask size differs from vertex count");
  }
  const int n = built.cube.axes.dims();
  Erosion erosion;
  for (std::size_t v = 0; v < built.vertices.size(); ++v) {
    if (erased[v]) continue;
    FeatureSet neighbors = FeatureSet::Empty(n);
    for (std::size_t t = 0; t < built.cube.axis_order.size(); ++t) {
      const std::uint32_t other = built.vertices[v].corner ^ (1u << t);
      if (!erased[other]) neighbors = neighbors.With(built.cube.axis_order[t]);
    }
    erosion.survivors.push_back(v);
    erosion.neighbor_axes.push_back(neighbors);
    erosion.isolated.push_back(neighbors.empty());
  }
  return erosion;
}

Erosion Erode(const BuiltHypercube& built, double erase_prob, Rng& rng) {
  if (!(erase_prob >= 0.0 && erase_prob < 1.0)) {
    throw ArgumentError("Erode: probability must lie in [0, 1)");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<bool> erased(built.vertices.size());
  for (std::size_t v = 0; v < erased.size(); ++v) erased[v] = unit(rng) < erase_prob;
  return ErodeWith(built, erased);
}

LabeledRelation TaskToRelation(const Task& task) {
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(task.m()), task.n);
  std::vector<int> labels;
  labels.reserve(task.m());
  for (std::size_t j = 0; j < task.m(); ++j) {
    pts.row(static_cast<Eigen::Index>(j)) = task.centroids[j].coords.transpose();
    labels.push_back(task.centroids[j].label);
  }
  return LabeledRelation(pts, labels);
}

std::vector<std::size_t> FindInvalidSelections(const Task& task) {
  const LabeledRelation relation = TaskToRelation(task);
  std::vector<std::size_t> invalid;
  if (relation.size() != task.m()) {
    invalid.resize(task.m());
    std::iota(invalid.begin(), invalid.end(), std::size_t{0});
    return invalid;
  }
  for (std::size_t j = 0; j < task.m(); ++j) {
    if (!IsFunctionalAt(relation, j, FeatureSet::Full(task.n))) {
      invalid.push_back(j);
      continue;
    }
    const SelectionSolution sol = SolveInstanceSelection(relation, j);
    if (!sol.unique() || sol.minimal_sets.front() != task.centroids[j].selection) {
      invalid.push_back(j);
    }
  }
  return invalid;
}

Task GenerateTask(int n, const TaskConfig& config, std::uint64_t seed,
                  const std::string& id) {
  if (n < 2 || n > kMaxDims) throw ArgumentError("GenerateTask: n outside [2, 32]");
  if (!(config.erase_prob >= 0.0 && config.erase_prob < 1.0)) {
    throw ArgumentError("GenerateTask: erase probability outside [0, 1)");
  }
  if (!(config.sigma > 0.0) || !(config.noise_ratio > 0.0)) {
    throw ArgumentError("GenerateTask: sigma and noise ratio must be positive");
  }
  const int max_cubes = config.max_cubes > 0 ? config.max_cubes : n + 2;
  const int max_dim =
      config.max_cube_dim > 0 ? std::min(config.max_cube_dim, n) : n;

  Rng rng(seed);
  std::string reason = "no attempt";
  for (int attempt = 0; attempt < config.task_retries; ++attempt) {
    Occupancy occupancy(n, max_cubes);
    const int cube_count = UniformInt(rng, 1, max_cubes);
    std::vector<Centroid> centroids;
    bool ok = true;
    for (int k = 0; k < cube_count && ok; ++k) {
      bool accepted = false;
      for (int draw = 0; draw < config.cube_retries && !accepted; ++draw) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const int d = UniformInt(rng, 1, max_dim);
        order.resize(static_cast<std::size_t>(d));
        BuiltHypercube built;
        try {
          built = BuildHypercube(FeatureSet::FromIndices(order, n), config.sigma,
                                 occupancy, rng);
        } catch (const CapacityError& e) {
          reason = e.what();
          continue;
        }
        for (int e = 0; e < config.erosion_retries && !accepted; ++e) {
          const Erosion erosion = Erode(built, config.erase_prob, rng);
          if (!ErosionIsValid(built, erosion, &reason)) continue;
          for (std::size_t s = 0; s < erosion.survivors.size(); ++s) {
            const CubeVertex& v = built.vertices[erosion.survivors[s]];
            centroids.push_back({v.coords, v.label, erosion.neighbor_axes[s], k});
          }
          accepted = true;
        }
        if (!accepted) ReleaseCube(built.cube, occupancy);
      }
      if (!accepted) {
        reason = "cube " + std::to_string(k) + ": " +
                 std::to_string(config.cube_retries) +
                 " cube draws exhausted their erosion retries, last: " + reason;
        ok = false;
      }
    }
    if (!ok) continue;
    PackCoordinates(centroids, n, config.sigma);

    Task task;
    task.id = id.empty() ? std::to_string(n) + "_" + std::to_string(seed) : id;
    task.n = n;
    task.sigma = config.sigma;
    task.noise_std = config.sigma * config.noise_ratio;
    task.seed = seed;
    task.centroids = std::move(centroids);
    if (const auto invalid = FindInvalidSelections(task); !invalid.empty()) {
      reason = "exact solver disagrees on centroid " + std::to_string(invalid.front());
      continue;
    }
    return task;
  }
  throw GenerationError("GenerateTask(n=" + std::to_string(n) + ", seed=" +
                        std::to_string(seed) + "): " +
                        std::to_string(config.task_retries) +
                        " task attempts failed; last: " + reason);
}

}  // namespace fattr
