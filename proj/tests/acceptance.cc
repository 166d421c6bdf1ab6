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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. `--only 1,2,6` restricts the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fattr/conditional_variance.h"
#include "fattr/errors.h"
#include "fattr/eval.h"
#include "fattr/experiment.h"
#include "fattr/fanova.h"
#include "fattr/methods.h"
#include "fattr/oracle.h"
#include "fattr/proxy_sets.h"
#include "fattr/relation.h"
#include "fattr/selection.h"
#include "fattr/shapley.h"
#include "fattr/task.h"
#include "fattr/task_io.h"

namespace fattr {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int Threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Collects sub-checks of one criterion; the criterion passes iff all do.
class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void Expect(bool ok, const std::string& what) {
    if (!ok) pass_ = false;
    lines_.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
  }

  bool Report() const {
    std::printf("%s criterion %d: %s\n", pass_ ? "PASS" : "FAIL", id_, title_.c_str());
    for (const std::string& l : lines_) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
    return pass_;
  }

 private:
  int id_;
  std::string title_;
  bool pass_ = true;
  std::vector<std::string> lines_;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

FeatureSet Set(std::initializer_list<int> one_based, int n) {
  std::vector<int> idx;
  for (int i : one_based) idx.push_back(i - 1);
  return FeatureSet::FromIndices(idx, n);
}

// ---------------------------------------------------------------------------

bool ExactSolverOnAndGrid() {
  Criterion c(1, "exact solver and fANOVA on the AND grid");
  const auto start = Clock::now();
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 0, 1, 1, 0, 1, 1;
  const std::vector<int> labels = {0, 0, 0, 1};
  const LabeledRelation r(pts, labels);

  const SelectionSolution origin = SolveInstanceSelection(r, 0);
  c.Expect(origin.minimal_sets == std::vector<FeatureSet>{Set({1}, 2), Set({2}, 2)},
           "(0,0) has the two minimal selections {1} and {2}");
  const SelectionSolution corner = SolveInstanceSelection(r, 3);
  c.Expect(corner.minimal_sets == std::vector<FeatureSet>{Set({1, 2}, 2)},
           "(1,1) has the single selection {1,2}");

  const Eigen::Vector4d f(0, 0, 0, 1);
  const FanovaDecomposition d = FanovaDecompose(pts, f);
  const double f_empty = d.components.at(FeatureSet::Empty(2))(0);
  c.Expect(std::abs(f_empty - 0.25) <= 1e-12, Fmt("f_empty = %.15f (want 1/4)", f_empty));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4);
  for (const auto& [s, v] : d.components) sum += v;
  const double err = (sum - f).cwiseAbs().maxCoeff();
  c.Expect(err <= 1e-12, Fmt("reconstruction error %.3g <= 1e-12", err));
  const double t = Since(start);
  c.Expect(t < 1.0, Fmt("runtime %.4f s < 1 s", t));
  return c.Report();
}

bool PerfectSettingRecovery() {
  Criterion c(2, "perfect-setting recovery of attr-GA^inf M");
  const auto start = Clock::now();
  FamilySpec spec;
  spec.count = 50;
  spec.dim_min = 2;
  spec.dim_max = 6;
  spec.noise_ratio = 1.0 / 64.0;
  const std::vector<Task> tasks = GenerateFamily(spec, 20260202, Threads());
  std::size_t hits = 0;
  std::size_t total = 0;
  for (const Task& task : tasks) {
    const MixtureOracle oracle(task);
    for (const Centroid& cen : task.centroids) {
      hits += AttrGakm(oracle, cen.coords, task.n, 1.0 - 1e-6).selection == cen.selection;
      ++total;
    }
  }
  c.Expect(hits == total, Fmt("%.0f of %.0f centroids match the ground truth", hits, total));
  const double t = Since(start);
  c.Expect(t < 60.0, Fmt("runtime %.2f s < 60 s", t));
  return c.Report();
}

struct BenchResult {
  std::vector<EvalReport> reports;
  double seconds = 0.0;

  const EvalReport& Get(const std::string& id) const {
    for (const EvalReport& r : reports) {
      if (r.method == id) return r;
    }
    throw ArgumentError("no report for " + id);
  }
};

// Tunes every method on one batch and scores it on a disjoint batch.
BenchResult Bench(const std::string& family, std::uint64_t tune_seed,
                  std::uint64_t eval_seed) {
  const auto start = Clock::now();
  FamilySpec spec;
  spec.family = family;
  spec.count = 100;
  spec.dim_min = 2;
  spec.dim_max = 11;
  std::vector<std::string> ids;
  for (const MethodInfo& m : MethodRegistry()) ids.emplace_back(m.id);

  const std::vector<Task> tune_tasks = GenerateFamily(spec, tune_seed, Threads());
  const ThresholdTable table = TuneMethods(ids, tune_tasks, 7, Threads());
  std::map<std::string, double> thresholds;
  for (const auto& [id, r] : table) thresholds[id] = r.threshold;

  const LoadedFamily eval{family, GenerateFamily(spec, eval_seed, Threads())};
  BenchResult out;
  out.reports = EvaluateMethods(ids, eval, thresholds, 7, Threads());
  out.seconds = Since(start);
  std::printf("  %s benchmark (%zu tuning + %zu evaluation tasks):\n", family.c_str(),
              tune_tasks.size(), eval.tasks.size());
  for (const EvalReport& r : out.reports) {
    std::printf("    %-18s t=%.2f acc=%.3f+-%.3f", r.method.c_str(), r.threshold, r.accuracy,
                r.ci_half_width);
    if (r.acc_star) std::printf(" acc*=%.3f", *r.acc_star);
    std::printf(" prop1=%.3f time=%.1fs\n", r.property1_rate, r.wall_time_s);
  }
  return out;
}

bool UnivariateBenchmark() {
  Criterion c(3, "univariate benchmark");
  const BenchResult b = Bench("univariate", 3101, 3202);
  const double gam = b.Get("attr_gam").accuracy;
  const double shapley = b.Get("shapley_e").accuracy;
  const double shap = b.Get("shap_baseline").accuracy;
  c.Expect(gam >= 0.99, Fmt("attr-GAM accuracy %.3f >= 0.99", gam));
  c.Expect(shapley >= 0.99, Fmt("Shapley-E(f) accuracy %.3f >= 0.99", shapley));
  c.Expect(shap <= 0.50, Fmt("SHAP-f(E) accuracy %.3f <= 0.50", shap));
  bool star_ok = true;
  for (const EvalReport& r : b.reports) {
    if (r.acc_star && *r.acc_star < r.accuracy) {
      star_ok = false;
      c.Expect(false, r.method + Fmt(": Acc* %.3f < Acc %.3f", *r.acc_star, r.accuracy));
    }
  }
  c.Expect(star_ok, "Acc* >= Acc for every feature method");
  c.Expect(b.seconds < 600.0, Fmt("runtime %.1f s < 600 s", b.seconds));
  return c.Report();
}

bool MultivariateBenchmark(bool run4, bool run5) {
  const BenchResult b = Bench("multivariate", 4101, 4202);
  bool ok = true;
  if (run4) {
    Criterion c(4, "multivariate benchmark");
    const double inf = b.Get("attr_gainf").accuracy;
    c.Expect(inf >= 0.70, Fmt("attr-GA^inf M accuracy %.3f >= 0.70", inf));
    const char* chain[] = {"attr_ga2m", "attr_ga3m", "attr_ga4m", "attr_gainf"};
    for (int k = 0; k + 1 < 4; ++k) {
      const EvalReport& lo = b.Get(chain[k]);
      const EvalReport& hi = b.Get(chain[k + 1]);
      const double slack = std::max(lo.ci_half_width, hi.ci_half_width);
      c.Expect(lo.accuracy <= hi.accuracy + slack,
               std::string(chain[k]) + " <= " + chain[k + 1] +
                   Fmt(": %.3f <= %.3f + %.3f", lo.accuracy, hi.accuracy, slack));
    }
    const double shapley = b.Get("shapley_e").accuracy;
    const double shap = b.Get("shap_baseline").accuracy;
    c.Expect(shapley >= 0.60, Fmt("Shapley-E(f) accuracy %.3f >= 0.60", shapley));
    c.Expect(shap <= 0.30, Fmt("SHAP-f(E) accuracy %.3f <= 0.30", shap));
    c.Expect(b.seconds < 1800.0, Fmt("runtime %.1f s < 1800 s", b.seconds));
    ok &= c.Report();
  }
  if (run5) {
    Criterion c(5, "Property-1 rates on the multivariate benchmark");
    const EvalReport& inf = b.Get("attr_gainf");
    c.Expect(inf.property1_rate >= 0.85,
             Fmt("attr-GA^inf M Property-1 rate %.3f >= 0.85", inf.property1_rate));
    for (const EvalReport& r : b.reports) {
      if (r.method == inf.method) continue;
      if (!(inf.property1_rate > r.property1_rate)) {
        c.Expect(false, r.method + Fmt(" rate %.3f is not below %.3f", r.property1_rate,
                                       inf.property1_rate));
      }
    }
    c.Expect(true, Fmt("compared against %.0f other methods", b.reports.size() - 1.0));
    const double rho = Correlate(b.reports);
    c.Expect(b.reports.size() >= 8 && rho >= 0.5,
             Fmt("Spearman rho %.3f >= 0.5 over %.0f methods", rho, b.reports.size()));
    ok &= c.Report();
  }
  return ok;
}

bool RelaxationClosedForms() {
  Criterion c(6, "conditional-variance closed forms");
  const Eigen::Vector2d x(0.4, 0.3);
  for (double alpha : {0.1, 0.5, 0.9}) {
    const double v = ConditionalVariance(DemoDensity::TiltedLinear(alpha), x, Set({1}, 2));
    c.Expect(std::abs(v - alpha * alpha / 3.0) <= 1e-9,
             Fmt("alpha %.1f: variance %.12f vs alpha^2/3 = %.12f", alpha, v,
                 alpha * alpha / 3.0));
  }
  for (double var : {0.01, 0.2}) {
    const double v = ConditionalVariance(DemoDensity::AdditiveNoise(var), x, Set({1}, 2));
    c.Expect(std::abs(v - var) <= 1e-9, Fmt("additive noise %.2f: variance %.12f", var, v));
  }
  return c.Report();
}

LabeledRelation RandomRelation(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_dist(1, 6);
  std::uniform_int_distribution<int> count_dist(1, 64);
  std::uniform_int_distribution<int> coord_dist(0, 2);
  std::uniform_int_distribution<int> label_dist(0, 1);
  const int n = dim_dist(rng);
  const int m = count_dist(rng);
  Eigen::MatrixXd pts(m, n);
  std::vector<int> labels(m);
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k < n; ++k) pts(r, k) = coord_dist(rng);
    labels[r] = label_dist(rng);
    for (int k = 0; k < r; ++k) {
      if (pts.row(k) == pts.row(r)) {
        labels[r] = labels[k];
        break;
      }
    }
  }
  return LabeledRelation(pts, labels);
}

bool Includes(const PointSet& outer, const PointSet& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

// Everything below `tag` must be byte-identical across runs and thread counts.
std::string Pipeline(int threads) {
  std::ostringstream out;
  FamilySpec spec;
  spec.count = 6;
  spec.dim_min = 2;
  spec.dim_max = 5;
  const std::vector<Task> tune = GenerateFamily(spec, 11, threads);
  const LoadedFamily eval{spec.family, GenerateFamily(spec, 12, threads)};
  out << FamilyManifest(spec, 12, eval.tasks).dump(1);
  for (const Task& t : eval.tasks) out << SerializeTask(t);
  std::vector<std::string> ids;
  for (const MethodInfo& m : MethodRegistry()) ids.emplace_back(m.id);
  const ThresholdTable table = TuneMethods(ids, tune, 5, threads);
  out << ThresholdsToJson(ids, table).dump(1);
  std::map<std::string, double> thresholds;
  for (const auto& [id, r] : table) thresholds[id] = r.threshold;
  std::vector<EvalReport> reports = EvaluateMethods(ids, eval, thresholds, 5, threads);
  for (EvalReport& r : reports) r.wall_time_s = 0.0;
  WriteReportsCsv(out, reports);
  out << ReportsToJson(reports).dump(1);
  return out.str();
}

bool PropertySuites() {
  Criterion c(7, "property suites");
  std::mt19937_64 rng(777);
  int p2 = 0;
  int duality = 0;
  const int relations = 500;
  for (int t = 0; t < relations; ++t) {
    const LabeledRelation r = RandomRelation(rng);
    p2 += CheckProperty2(r);
    bool ok = true;
    const int n = r.dims();
    for (std::uint32_t mask = 0; mask < (1u << n) && ok; ++mask) {
      const FeatureSet s(mask, n);
      const ProxySets p = ComputeProxySets(r, s);
      ok = p.alternate == ComplementOf(FunctionalDomain(r, s.Complement()), r.size()) &&
           Includes(p.alternate, p.baseline) &&
           Includes(ComplementOf(ComputeProxySets(r, s.Complement()).baseline, r.size()),
                    FunctionalDomain(r, s));
    }
    duality += ok;
  }
  c.Expect(p2 == relations, Fmt("Property-2 holds on %.0f of %.0f relations", p2, relations));
  c.Expect(duality == relations,
           Fmt("duality and inclusion hold on %.0f of %.0f relations", duality, relations));

  // Shapley axioms on random games and on posterior games.
  double efficiency = 0.0;
  double symmetry = 0.0;
  double null_player = 0.0;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int g = 0; g < 200; ++g) {
    const int n = 3 + g % 6;
    std::vector<double> table(std::size_t{1} << n);
    for (double& v : table) v = unit(rng);
    // Feature n-1 is a null player; features 0 and 1 are interchangeable.
    const auto canon = [n](std::uint32_t s) {
      s &= ~(1u << (n - 1));
      const std::uint32_t a = s & 1u;
      const std::uint32_t b = (s >> 1) & 1u;
      return (s & ~3u) | (a + b == 1 ? 1u : (a + b == 2 ? 3u : 0u));
    };
    const ValueFunction v = [&](std::uint32_t s) { return table[canon(s)]; };
    const ShapleyEstimate e = ExactShapley(n, v);
    efficiency = std::max(
        efficiency, std::abs(e.values.sum() - (v(FeatureSet::FullMask(n)) - v(0))));
    symmetry = std::max(symmetry, std::abs(e.values(0) - e.values(1)));
    null_player = std::max(null_player, std::abs(e.values(n - 1)));
  }
  for (int t = 0; t < 20; ++t) {
    const Task task = GenerateTask(2 + t % 7, TaskConfig{}, DeriveSeed(99, t));
    const MixtureOracle o(task);
    const Eigen::VectorXd x = task.centroids.front().coords;
    const ValueFunction v = [&](std::uint32_t s) {
      return o.Posterior(x, FeatureSet(s, task.n));
    };
    const ShapleyEstimate e = ExactShapley(task.n, v);
    efficiency = std::max(
        efficiency, std::abs(e.values.sum() - (v(FeatureSet::FullMask(task.n)) - v(0))));
  }
  c.Expect(efficiency <= 1e-9, Fmt("Shapley efficiency error %.3g <= 1e-9", efficiency));
  c.Expect(symmetry <= 1e-9, Fmt("Shapley symmetry error %.3g <= 1e-9", symmetry));
  c.Expect(null_player <= 1e-9, Fmt("Shapley null-player error %.3g <= 1e-9", null_player));

  // Analytic gradient against central differences.
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    TaskConfig config;
    config.noise_ratio = t % 2 ? 0.5 : 1.0;
    const Task task = GenerateTask(2 + t % 6, config, DeriveSeed(4242, t));
    const MixtureOracle o(task);
    Rng point_rng(t);
    const Eigen::VectorXd x = o.Sample(point_rng, 1).front().x;
    const double h = 1e-5;
    Eigen::VectorXd fd(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Eigen::VectorXd up = x;
      Eigen::VectorXd down = x;
      up(i) += h;
      down(i) -= h;
      fd(i) = (o.Posterior(up) - o.Posterior(down)) / (2 * h);
    }
    const Eigen::VectorXd g = o.Gradient(x);
    worst = std::max(worst, (g - fd).norm() / std::max({g.norm(), fd.norm(), 1e-3}));
  }
  c.Expect(worst <= 1e-6, Fmt("gradient relative error %.3g <= 1e-6 on 100 points", worst));

  const std::string a = Pipeline(1);
  const std::string b = Pipeline(1);
  const std::string d = Pipeline(std::max(2, Threads()));
  c.Expect(a == b && a == d,
           Fmt("gen/tune/run output byte-identical across reruns and thread counts (%.0f bytes)",
               a.size()));
  return c.Report();
}

}  // namespace
}  // namespace fattr

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--only") {
      std::stringstream ss(argv[i + 1]);
      std::string item;
      while (std::getline(ss, item, ',')) only.insert(std::stoi(item));
    }
  }
  const auto want = [&](int id) { return only.empty() || only.count(id) > 0; };
  int failed = 0;
  try {
    if (want(1)) failed += !fattr::ExactSolverOnAndGrid();
    if (want(2)) failed += !fattr::PerfectSettingRecovery();
    if (want(3)) failed += !fattr::UnivariateBenchmark();
    if (want(4) || want(5)) failed += !fattr::MultivariateBenchmark(want(4), want(5));
    if (want(6)) failed += !fattr::RelaxationClosedForms();
    if (want(7)) failed += !fattr::PropertySuites();
  } catch (const std::exception& e) {
    std::printf("FAIL aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criterion group(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
