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

#include "fattr/experiment.h"

#include <filesystem>
#include <fstream>
#include <ios>

#include "fattr/errors.h"
#include "fattr/parallel.h"
#include "fattr/task_io.h"

namespace fattr {

void FamilySpec::Validate() const {
  if (family != "univariate" && family != "multivariate") {
    throw ArgumentError("family must be univariate or multivariate, got \"" + family + "\"");
  }
  if (count < 1) throw ArgumentError("count must be at least 1");
  if (dim_min < 2 || dim_max > kMaxDims || dim_min > dim_max) {
    throw ArgumentError("dims must satisfy 2 <= a <= b <= 32");
  }
  if (!(erase_prob >= 0.0 && erase_prob < 1.0)) {
    throw ArgumentError("erase probability must lie in [0, 1)");
  }
  if (!(sigma > 0.0) || !(noise_ratio > 0.0)) {
    throw ArgumentError("sigma and noise ratio must be positive");
  }
}

TaskConfig FamilySpec::ToTaskConfig() const {
  TaskConfig config;
  config.max_cube_dim = family == "univariate" ? 1 : 0;
  config.erase_prob = erase_prob;
  config.sigma = sigma;
  config.noise_ratio = noise_ratio;
  return config;
}

std::string TaskFileName(const std::string& family, std::size_t index) {
  return family + "_" + std::to_string(index) + ".json";
}

std::vector<Task> GenerateFamily(const FamilySpec& spec, std::uint64_t seed,
                                 int threads) {
  spec.Validate();
  const TaskConfig config = spec.ToTaskConfig();
  const int span = spec.dim_max - spec.dim_min + 1;
  std::vector<Task> tasks(spec.count);
  ParallelFor(tasks.size(), threads, [&](std::size_t t) {
    const int n = spec.dim_min + static_cast<int>(t % span);
    try {
      tasks[t] = GenerateTask(n, config, DeriveSeed(seed, t),
                              spec.family + "_" + std::to_string(t));
    } catch (const GenerationError& e) {
      throw GenerationError("task " + std::to_string(t) + ": " + e.what());
    }
  });
  return tasks;
}

nlohmann::ordered_json FamilyManifest(const FamilySpec& spec, std::uint64_t seed,
                                      const std::vector<Task>& tasks) {
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    files.push_back({{"file", TaskFileName(spec.family, t)},
                     {"n", tasks[t].n},
                     {"seed", std::to_string(tasks[t].seed)}});
  }
  return {{"family", spec.family},
          {"master_seed", std::to_string(seed)},
          {"generator_version", kGeneratorVersion},
          {"count", spec.count},
          {"dims", {spec.dim_min, spec.dim_max}},
          {"erase_prob", spec.erase_prob},
          {"sigma", spec.sigma},
          {"noise_ratio", spec.noise_ratio},
          {"tasks", files}};
}

void WriteFamily(const std::string& dir, const FamilySpec& spec, std::uint64_t seed,
                 const std::vector<Task>& tasks) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    SaveTask(tasks[t], (root / TaskFileName(spec.family, t)).string());
  }
  const std::string path = (root / "manifest.json").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  out << FamilyManifest(spec, seed, tasks).dump(1) << "\n";
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

LoadedFamily LoadFamily(const std::string& dir) {
  const std::filesystem::path root(dir);
  const std::string path = (root / "manifest.json").string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  nlohmann::ordered_json manifest;
  try {
    manifest = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  LoadedFamily loaded;
  try {
    loaded.family = manifest.at("family").get<std::string>();
    for (const auto& entry : manifest.at("tasks")) {
      loaded.tasks.push_back(LoadTask((root / entry.at("file").get<std::string>()).string()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (loaded.tasks.empty()) throw ParseError(path + ": no tasks listed");
  return loaded;
}

MethodConfig BenchConfig(const std::string& id) {
  MethodConfig config;
  config.id = id;
  config.Validate();
  return config;
}

ThresholdTable TuneMethods(const std::vector<std::string>& ids,
                           const std::vector<Task>& tasks, std::uint64_t seed,
                           int threads) {
  ThresholdTable table;
  for (const std::string& id : ids) {
    const BatchOutputs batch = RunBatch(BenchConfig(id), tasks, seed, threads);
    table[id] = Tune(batch, tasks, ThresholdGrid(FindMethod(id)));
  }
  return table;
}

nlohmann::ordered_json ThresholdsToJson(const std::vector<std::string>& ids,
                                        const ThresholdTable& table) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const std::string& id : ids) {
    const TuneResult& r = table.at(id);
    nlohmann::ordered_json curve = nlohmann::ordered_json::array();
    for (const auto& [t, acc] : r.curve) curve.push_back({t, acc});
    out[id] = {{"threshold", r.threshold}, {"accuracy", r.accuracy}, {"curve", curve}};
  }
  return out;
}

std::map<std::string, double> ThresholdsFromJson(const nlohmann::ordered_json& json) {
  if (!json.is_object()) throw ParseError("thresholds: expected an object");
  std::map<std::string, double> out;
  for (const auto& [id, entry] : json.items()) {
    const auto& t = entry.is_object() && entry.contains("threshold") ? entry["threshold"] : entry;
    if (!t.is_number()) throw ParseError("thresholds: no numeric threshold for " + id);
    out[id] = t.get<double>();
  }
  return out;
}

std::vector<EvalReport> EvaluateMethods(const std::vector<std::string>& ids,
                                        const LoadedFamily& family,
                                        const std::map<std::string, double>& thresholds,
                                        std::uint64_t seed, int threads) {
  for (const std::string& id : ids) {
    if (!thresholds.count(id)) throw ArgumentError("no threshold for method " + id);
  }
  std::vector<EvalReport> reports;
  for (const std::string& id : ids) {
    const BatchOutputs batch = RunBatch(BenchConfig(id), family.tasks, seed, threads);
    reports.push_back(ScoreBatch(batch, family.tasks, thresholds.at(id), family.family));
  }
  return reports;
}

}  // namespace fattr
