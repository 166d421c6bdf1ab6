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

// fattr: generate benchmark tasks, tune method thresholds, and score methods.
//
//   fattr gen  --family univariate --count 100 --dims 2..11 --seed 42 --out tasks/
//   fattr tune --tasks tune_tasks/ --out tuned/
//   fattr run  --tasks tasks/ --thresholds tuned/thresholds.json --out report/ --props
//
// Exit codes: 0 success, 2 usage, 3 IO or malformed input, 4 generation failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ios>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fattr/errors.h"
#include "fattr/eval.h"
#include "fattr/experiment.h"
#include "fattr/methods.h"
#include "json.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kIo = 3;
constexpr int kGeneration = 4;

int Fail(int code, const std::string& message) {
  std::string line = message;
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error: " << line << "\n";
  return code;
}

// "a..b" or a single dimension "a".
std::pair<int, int> ParseDims(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int d = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {d, d};
    }
    const std::string lo = text.substr(0, dots);
    const std::string hi = text.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw fattr::ArgumentError("--dims expects <a>..<b>, got \"" + text + "\"");
  }
}

std::vector<std::string> ParseMethods(const std::string& list) {
  std::vector<std::string> ids;
  if (list.empty()) {
    for (const fattr::MethodInfo& m : fattr::MethodRegistry()) ids.emplace_back(m.id);
    return ids;
  }
  std::stringstream ss(list);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    fattr::FindMethod(id);  // throws with the list of valid ids
    ids.push_back(id);
  }
  if (ids.empty()) throw fattr::ArgumentError("--methods: empty list");
  return ids;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

void MakeDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create " + dir + ": " + ec.message());
}

struct Options {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out = ".";
  // gen
  fattr::FamilySpec family;
  std::string dims = "2..11";
  // tune, run
  std::string tasks;
  std::string methods;
  // run
  std::string thresholds;
  bool props = false;
  bool no_timing = false;
};

int Gen(Options& o) {
  std::tie(o.family.dim_min, o.family.dim_max) = ParseDims(o.dims);
  o.family.Validate();
  const std::vector<fattr::Task> tasks = fattr::GenerateFamily(o.family, o.seed, o.threads);
  fattr::WriteFamily(o.out, o.family, o.seed, tasks);
  std::cout << "wrote " << tasks.size() << " " << o.family.family << " tasks to " << o.out
            << "\n";
  return 0;
}

int Tune(const Options& o) {
  const std::vector<std::string> ids = ParseMethods(o.methods);
  const fattr::LoadedFamily family = fattr::LoadFamily(o.tasks);
  const fattr::ThresholdTable table = fattr::TuneMethods(ids, family.tasks, o.seed, o.threads);
  MakeDir(o.out);
  WriteFile(std::filesystem::path(o.out) / "thresholds.json",
            fattr::ThresholdsToJson(ids, table).dump(1) + "\n");
  for (const std::string& id : ids) {
    std::printf("%-18s threshold=%.2f accuracy=%.4f\n", id.c_str(), table.at(id).threshold,
                table.at(id).accuracy);
  }
  return 0;
}

int Run(const Options& o) {
  const std::vector<std::string> ids = ParseMethods(o.methods);
  std::ifstream in(o.thresholds, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + o.thresholds);
  nlohmann::ordered_json json;
  try {
    json = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw fattr::ParseError(o.thresholds + ": " + e.what());
  }
  const auto thresholds = fattr::ThresholdsFromJson(json);
  const fattr::LoadedFamily family = fattr::LoadFamily(o.tasks);
  std::vector<fattr::EvalReport> reports =
      fattr::EvaluateMethods(ids, family, thresholds, o.seed, o.threads);
  if (o.no_timing) {
    for (auto& r : reports) r.wall_time_s = 0.0;
  }

  MakeDir(o.out);
  const std::filesystem::path root(o.out);
  std::ostringstream csv;
  fattr::WriteReportsCsv(csv, reports);
  WriteFile(root / "report.csv", csv.str());
  nlohmann::ordered_json doc = {{"family", family.family},
                                {"seed", std::to_string(o.seed)},
                                {"reports", fattr::ReportsToJson(reports)}};
  if (o.props) {
    nlohmann::ordered_json rates = nlohmann::ordered_json::object();
    for (const auto& r : reports) {
      rates[r.method] = {{"property1_rate", r.property1_rate}, {"ci", r.property1_ci}};
    }
    doc["property1"] = rates;
    if (reports.size() >= 5) doc["spearman_rho"] = fattr::Correlate(reports);
  }
  WriteFile(root / "report.json", doc.dump(1) + "\n");

  for (const auto& r : reports) {
    std::printf("%-18s acc=%.4f +- %.4f", r.method.c_str(), r.accuracy, r.ci_half_width);
    if (r.acc_star) std::printf(" acc*=%.4f", *r.acc_star);
    if (o.props) std::printf(" prop1=%.4f", r.property1_rate);
    std::printf("\n");
  }
  if (o.props && doc.contains("spearman_rho")) {
    std::printf("spearman rho(prop1, acc) = %.4f\n", doc["spearman_rho"].get<double>());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Functional-dependence feature attribution benchmark"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  const auto shared = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "Master seed (u64)");
    cmd->add_option("--threads", o.threads, "Worker threads across tasks")
        ->check(CLI::Range(1, 1024));
    cmd->add_option("--out", o.out, "Output directory");
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate a task family");
  shared(gen);
  gen->add_option("--family", o.family.family, "univariate or multivariate")
      ->check(CLI::IsMember({"univariate", "multivariate"}));
  gen->add_option("--count", o.family.count, "Number of tasks");
  gen->add_option("--dims", o.dims, "Dimension range a..b, cycled across tasks");
  gen->add_option("--pe", o.family.erase_prob, "Vertex erase probability");
  gen->add_option("--sigma", o.family.sigma, "Grid spacing");
  gen->add_option("--noise-ratio", o.family.noise_ratio, "Mixture std as a multiple of sigma");

  CLI::App* tune = app.add_subcommand("tune", "Tune thresholds on a task family");
  shared(tune);
  tune->add_option("--tasks", o.tasks, "Task directory")->required();
  tune->add_option("--methods", o.methods, "Comma-separated method ids (default: all)");

  CLI::App* run = app.add_subcommand("run", "Score methods on a task family");
  shared(run);
  run->add_option("--tasks", o.tasks, "Task directory")->required();
  run->add_option("--thresholds", o.thresholds, "thresholds.json from tune")->required();
  run->add_option("--methods", o.methods, "Comma-separated method ids (default: all)");
  run->add_flag("--props", o.props, "Add Property-1 rates and their rank correlation");
  run->add_flag("--no-timing", o.no_timing, "Write zero wall times for byte-stable reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return Fail(kUsage, e.what());
  }

  try {
    if (*gen) return Gen(o);
    if (*tune) return Tune(o);
    return Run(o);
  } catch (const fattr::ArgumentError& e) {
    return Fail(kUsage, e.what());
  } catch (const fattr::GenerationError& e) {
    return Fail(kGeneration, e.what());
  } catch (const fattr::ParseError& e) {
    return Fail(kIo, e.what());
  } catch (const std::ios_base::failure& e) {
    // libstdc++ appends the category message; keep the reason only.
    std::string what = e.what();
    const auto tail = what.rfind(": iostream error");
    if (tail != std::string::npos) what.erase(tail);
    return Fail(kIo, what);
  } catch (const std::exception& e) {
    return Fail(1, e.what());
  }
}
