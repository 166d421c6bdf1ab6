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

#include "fattr/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "fattr/errors.h"
#include "fattr/oracle.h"
#include "fattr/parallel.h"
#include "fattr/selection.h"

namespace fattr {
namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

BatchOutputs RunBatch(const MethodConfig& config, const std::vector<Task>& tasks,
                      std::uint64_t seed, int threads) {
  config.Validate();
  BatchOutputs batch;
  batch.method = config.id;
  batch.outputs.resize(tasks.size());
  const auto start = std::chrono::steady_clock::now();
  ParallelFor(tasks.size(), threads, [&](std::size_t t) {
    const Task& task = tasks[t];
    const MixtureOracle oracle(task);
    MethodConfig local = config;
    local.lime.cell_width = task.sigma;
    auto& out = batch.outputs[t];
    out.reserve(task.m());
    for (std::size_t j = 0; j < task.m(); ++j) {
      Rng rng(MethodSeed(seed, config.id, t, j));
      out.push_back(RunMethod(local, oracle, task.centroids[j].coords, rng));
    }
  });
  batch.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return batch;
}

Predictions SelectAll(const BatchOutputs& batch, double threshold) {
  Predictions out(batch.outputs.size());
  for (std::size_t t = 0; t < batch.outputs.size(); ++t) {
    for (const MethodOutput& o : batch.outputs[t]) out[t].push_back(o.Select(threshold));
  }
  return out;
}

std::vector<double> ThresholdGrid(double lo, double hi) {
  if (!(lo <= hi)) throw ArgumentError("threshold grid: empty range");
  const long first = std::lround(lo * 100.0);
  const long last = std::lround(hi * 100.0);
  std::vector<double> grid;
  for (long k = first; k <= last; ++k) grid.push_back(static_cast<double>(k) / 100.0);
  return grid;
}

std::vector<double> ThresholdGrid(const MethodInfo& method) {
  return ThresholdGrid(method.threshold_min, method.threshold_max);
}

TuneResult Tune(const BatchOutputs& batch, const std::vector<Task>& tasks,
                const std::vector<double>& grid) {
  if (grid.empty()) throw ArgumentError("tune: empty threshold grid");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  TuneResult result;
  result.accuracy = -1.0;
  for (double threshold : sorted) {
    const double acc = Score(tasks, SelectAll(batch, threshold)).accuracy;
    result.curve.emplace_back(threshold, acc);
    if (acc > result.accuracy) {
      result.accuracy = acc;
      result.threshold = threshold;
    }
  }
  return result;
}

double CiHalfWidth(double p, std::size_t count) {
  if (count == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

EvalReport Score(const std::vector<Task>& tasks, const Predictions& predictions,
                 const std::vector<std::vector<Eigen::VectorXd>>* feature_values) {
  if (predictions.size() != tasks.size()) {
    throw ArgumentError("score: predictions cover " + std::to_string(predictions.size()) +
                        " of " + std::to_string(tasks.size()) + " tasks");
  }
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t verified = 0;
  std::size_t star_correct = 0;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const Task& task = tasks[t];
    if (predictions[t].size() != task.m()) {
      throw ArgumentError("score: task " + std::to_string(t) + " has " +
                          std::to_string(task.m()) + " centroids but " +
                          std::to_string(predictions[t].size()) + " predictions");
    }
    const Property1Result prop = CheckProperty1(TaskToRelation(task), predictions[t]);
    for (std::size_t j = 0; j < task.m(); ++j) {
      ++total;
      if (predictions[t][j] == task.centroids[j].selection) ++correct;
      if (prop.verified[j]) ++verified;
      if (feature_values != nullptr) {
        const Eigen::VectorXd& v = (*feature_values)[t][j];
        Eigen::Index arg = 0;
        v.maxCoeff(&arg);
        if (FeatureSet::Singleton(static_cast<int>(arg), task.n) ==
            task.centroids[j].selection) {
          ++star_correct;
        }
      }
    }
  }
  EvalReport report;
  report.centroids = total;
  const double denom = total == 0 ? 1.0 : static_cast<double>(total);
  report.accuracy = correct / denom;
  report.property1_rate = verified / denom;
  report.ci_half_width = CiHalfWidth(report.accuracy, total);
  report.property1_ci = CiHalfWidth(report.property1_rate, total);
  if (feature_values != nullptr) report.acc_star = star_correct / denom;
  return report;
}

EvalReport ScoreBatch(const BatchOutputs& batch, const std::vector<Task>& tasks,
                      double threshold, const std::string& family) {
  const MethodInfo& info = FindMethod(batch.method);
  std::vector<std::vector<Eigen::VectorXd>> values;
  const bool star = info.kind == MethodKind::kFeature && family == "univariate";
  if (star) {
    for (const auto& per_task : batch.outputs) {
      auto& row = values.emplace_back();
      for (const MethodOutput& o : per_task) row.push_back(o.feature_values);
    }
  }
  EvalReport report = Score(tasks, SelectAll(batch, threshold), star ? &values : nullptr);
  report.method = batch.method;
  report.family = family;
  report.wall_time_s = batch.wall_time_s;
  report.threshold = threshold;
  report.config = {{"threshold", threshold},
                   {"threshold_kind", info.kind == MethodKind::kFeature ? "mu" : "eta"},
                   {"tune_ties", "smaller"},
                   {"tasks", tasks.size()}};
  return report;
}

double Spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ArgumentError("spearman: need two equal-length samples of size >= 2");
  }
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (i + j) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) throw ArgumentError("spearman: constant sample");
  return cov / std::sqrt(va * vb);
}

double Correlate(const std::vector<EvalReport>& reports) {
  if (reports.size() < 5) {
    throw ArgumentError("correlate: need at least 5 method reports, got " +
                        std::to_string(reports.size()));
  }
  std::vector<double> prop;
  std::vector<double> acc;
  for (const EvalReport& r : reports) {
    prop.push_back(r.property1_rate);
    acc.push_back(r.accuracy);
  }
  return Spearman(prop, acc);
}

void WriteReportsCsv(std::ostream& os, const std::vector<EvalReport>& reports) {
  os << "method,family,accuracy,acc_star,prop1_rate,ci,centroids,wall_time_s\n";
  for (const EvalReport& r : reports) {
    os << r.method << ',' << r.family << ',' << FormatDouble(r.accuracy) << ','
       << (r.acc_star ? FormatDouble(*r.acc_star) : "") << ','
       << FormatDouble(r.property1_rate) << ',' << FormatDouble(r.ci_half_width) << ','
       << r.centroids << ',' << FormatDouble(r.wall_time_s) << '\n';
  }
}

nlohmann::ordered_json ReportsToJson(const std::vector<EvalReport>& reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const EvalReport& r : reports) {
    nlohmann::ordered_json row;
    row["method"] = r.method;
    row["family"] = r.family;
    row["accuracy"] = r.accuracy;
    row["acc_star"] = r.acc_star ? nlohmann::ordered_json(*r.acc_star) : nullptr;
    row["prop1_rate"] = r.property1_rate;
    row["ci"] = r.ci_half_width;
    row["prop1_ci"] = r.property1_ci;
    row["centroids"] = r.centroids;
    row["wall_time_s"] = r.wall_time_s;
    row["config"] = r.config;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fattr
