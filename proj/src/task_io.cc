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

#include "fattr/task_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fattr/errors.h"

namespace fattr {
namespace {

using Json = nlohmann::ordered_json;

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

template <typename T>
T As(const Json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

Json TaskToJson(const Task& task) {
  Json centroids = Json::array();
  for (const Centroid& c : task.centroids) {
    std::vector<double> coords(c.coords.data(), c.coords.data() + c.coords.size());
    std::vector<int> selection;
    for (int i : c.selection.Indices()) selection.push_back(i + 1);
    centroids.push_back(Json{{"coords", coords},
                             {"label", c.label},
                             {"selection", selection},
                             {"hypercube", c.hypercube}});
  }
  return Json{{"id", task.id},
              {"n", task.n},
              {"sigma", task.sigma},
              {"noise_std", task.noise_std},
              {"seed", std::to_string(task.seed)},
              {"generator_version", task.generator_version},
              {"centroids", std::move(centroids)}};
}

Task TaskFromJson(const Json& json, std::vector<std::string>* warnings) {
  Task task;
  task.id = As<std::string>(Field(json, "id", "task"), "id");
  task.n = As<int>(Field(json, "n", "task"), "n");
  if (task.n < 1 || task.n > kMaxDims) throw ParseError("n: outside [1, 32]");
  task.sigma = As<double>(Field(json, "sigma", "task"), "sigma");
  if (!(task.sigma > 0.0)) throw ParseError("sigma: must be positive");
  task.noise_std = json.contains("noise_std")
                       ? As<double>(json.at("noise_std"), "noise_std")
                       : task.sigma / 2.0;
  if (!(task.noise_std > 0.0)) throw ParseError("noise_std: must be positive");

  const std::string seed = As<std::string>(Field(json, "seed", "task"), "seed");
  try {
    std::size_t used = 0;
    task.seed = std::stoull(seed, &used);
    if (used != seed.size()) throw std::invalid_argument(seed);
  } catch (const std::exception&) {
    throw ParseError("seed: not an unsigned 64-bit integer: \"" + seed + "\"");
  }
  task.generator_version =
      As<std::string>(Field(json, "generator_version", "task"), "generator_version");
  if (warnings != nullptr && task.generator_version != kGeneratorVersion) {
    warnings->push_back("task " + task.id + ": generator_version \"" +
                        task.generator_version + "\" differs from \"" +
                        kGeneratorVersion + "\"");
  }

  const Json& centroids = Field(json, "centroids", "task");
  if (!centroids.is_array()) throw ParseError("centroids: not an array");
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    const std::string where = "centroids[" + std::to_string(j) + "]";
    const Json& cj = centroids[j];
    Centroid c;
    const auto coords = As<std::vector<double>>(Field(cj, "coords", where), where + ".coords");
    if (static_cast<int>(coords.size()) != task.n) {
      throw ParseError(where + ".coords: expected " + std::to_string(task.n) +
                       " values, got " + std::to_string(coords.size()));
    }
    c.coords = Eigen::Map<const Eigen::VectorXd>(coords.data(),
                                                 static_cast<Eigen::Index>(coords.size()));
    c.label = As<int>(Field(cj, "label", where), where + ".label");
    if (c.label != 0 && c.label != 1) throw ParseError(where + ".label: must be 0 or 1");
    const auto selection =
        As<std::vector<int>>(Field(cj, "selection", where), where + ".selection");
    if (!std::is_sorted(selection.begin(), selection.end()) ||
        std::adjacent_find(selection.begin(), selection.end()) != selection.end()) {
      throw ParseError(where + ".selection: indices must be sorted and distinct");
    }
    c.selection = FeatureSet::Empty(task.n);
    for (int i : selection) {
      if (i < 1 || i > task.n) {
        throw ParseError(where + ".selection: index " + std::to_string(i) +
                         " outside [1, " + std::to_string(task.n) + "]");
      }
      c.selection = c.selection.With(i - 1);
    }
    c.hypercube = As<int>(Field(cj, "hypercube", where), where + ".hypercube");
    task.centroids.push_back(std::move(c));
  }
  return task;
}

std::string SerializeTask(const Task& task) { return TaskToJson(task).dump(1) + "\n"; }

void SaveTask(const Task& task, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  out << SerializeTask(task);
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

Task LoadTask(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json json;
  try {
    json = Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return TaskFromJson(json, warnings);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace fattr
