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

#ifndef FATTR_TASK_IO_H_
#define FATTR_TASK_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "fattr/task.h"

namespace fattr {

// JSON layout (one task per file):
//   {"id": str, "n": int, "sigma": float, "noise_std": float,
//    "seed": "<uint64>", "generator_version": str,
//    "centroids": [{"coords": [float x n], "label": 0|1,
//                   "selection": [sorted 1-based ints], "hypercube": int}]}
nlohmann::ordered_json TaskToJson(const Task& task);

// Throws ParseError naming the offending field. A missing noise_std defaults
// to sigma / 2. A generator_version different from ours appends a message to
// `warnings` when provided.
Task TaskFromJson(const nlohmann::ordered_json& json,
                  std::vector<std::string>* warnings = nullptr);

std::string SerializeTask(const Task& task);
void SaveTask(const Task& task, const std::string& path);
Task LoadTask(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace fattr

#endif  // FATTR_TASK_IO_H_
