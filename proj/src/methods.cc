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

#include "fattr/methods.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <random>

#include <Eigen/Cholesky>

#include "fattr/errors.h"
#include "fattr/union_find.h"

namespace fattr {
namespace {

SubsetValues AttrTable(const MixtureOracle& oracle, const Eigen::VectorXd& x,
                       int max_order) {
  SubsetValues table = oracle.PosteriorTable(x, max_order);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    if (std::popcount(mask) <= max_order) table[mask] = AttrProb(table[mask]);
  }
  return table;
}

void CheckEta(double eta, double lo, const char* who) {
  if (!(eta >= lo && eta <= 1.0)) {
    throw ArgumentError(std::string(who) + ": eta outside [" +
                        (lo == 0.0 ? "0" : "1/2") + ", 1]");
  }
}

// Population standard deviation of each centroid coordinate; axes where all
// centroids agree fall back to the noise scale.
Eigen::VectorXd CentroidSpread(const MixtureOracle& oracle) {
  const Eigen::MatrixXd centered = oracle.centroids().rowwise() - oracle.mean().transpose();
  Eigen::VectorXd spread =
      (centered.array().square().colwise().sum() / static_cast<double>(oracle.size()))
          .sqrt()
          .transpose();
  for (Eigen::Index i = 0; i < spread.size(); ++i) {
    if (spread(i) <= 0.0) spread(i) = oracle.noise_std();
  }
  return spread;
}

constexpr std::array<MethodInfo, 15> kMethods = {{
    {"lime_cat", "LIME (Cat.)", MethodKind::kFeature, 0.10, 0.95},
    {"lime_cont", "LIME (Cont.)", MethodKind::kFeature, 0.10, 0.95},
    {"attr_gam", "attr-GAM", MethodKind::kFeature, 0.10, 0.95},
    {"shapley_e", "Shapley E(f)", MethodKind::kFeature, 0.10, 0.95},
    {"shap_baseline", "SHAP f(E)", MethodKind::kFeature, 0.10, 0.95},
    {"grad", "Gradient", MethodKind::kFeature, 0.10, 0.95},
    {"grad_x_input", "Gradient x Input", MethodKind::kFeature, 0.10, 0.95},
    {"integrated_grad", "Integrated Gradient", MethodKind::kFeature, 0.10, 0.95},
    {"expected_grad", "Expected Gradient", MethodKind::kFeature, 0.10, 0.95},
    {"attr_gainf", "attr-GAinfM", MethodKind::kSubset, 0.50, 1.00},
    {"attr_ga2m", "attr-GA2M", MethodKind::kSubset, 0.50, 1.00},
    {"attr_ga3m", "attr-GA3M", MethodKind::kSubset, 0.50, 1.00},
    {"attr_ga4m", "attr-GA4M", MethodKind::kSubset, 0.50, 1.00},
    {"interpretable_nn", "InterpretableNN", MethodKind::kSubset, 0.00, 1.00},
    {"archipelago", "Archipelago", MethodKind::kSubset, 0.50, 1.00},
}};

}  // namespace

FeatureSet SelectFromFeatures(const Eigen::VectorXd& values, double mu) {
  const int n = static_cast<int>(values.size());
  if (n < 1) throw ArgumentError("select_from_features: empty value vector");
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw ArgumentError("select_from_features: mu outside (0, 1]");
  }
  if ((values.array() < 0.0).any() || !values.allFinite()) {
    throw ArgumentError("select_from_features: values must be finite magnitudes");
  }
  const double top = values.maxCoeff();
  if (top == 0.0) return FeatureSet::Full(n);
  std::uint32_t bits = 0;
  for (int i = 0; i < n; ++i) {
    if (values(i) >= mu * top) bits |= 1u << i;
  }
  return FeatureSet(bits, n);
}

SubsetCandidates::SubsetCandidates(
    const std::vector<std::pair<FeatureSet, double>>& ordered, FeatureSet fallback)
    : fallback_(fallback) {
  for (const auto& entry : ordered) {
    if (records_.empty() || entry.second > records_.back().second) {
      records_.push_back(entry);
    }
  }
}

FeatureSet SubsetCandidates::Select(double eta) const {
  for (const auto& [subset, score] : records_) {
    if (score >= eta) return subset;
  }
  return fallback_;
}

SubsetCandidates GakmCandidates(const SubsetValues& attr, int k) {
  const int n = attr.dims();
  if (k < 1 || k > n) throw ArgumentError("attr_gakm: order k outside [1, n]");
  std::vector<std::pair<FeatureSet, double>> ordered;
  ordered.emplace_back(FeatureSet::Empty(n), attr[0]);
  FeatureSet best;
  double best_score = -1.0;
  for (int size = 1; size <= k; ++size) {
    for (std::uint64_t mask = (std::uint64_t{1} << size) - 1; mask != 0;
         mask = NextSamePopcount(mask, n)) {
      const auto bits = static_cast<std::uint32_t>(mask);
      ordered.emplace_back(FeatureSet(bits, n), attr[bits]);
      if (size == k && attr[bits] > best_score) {
        best_score = attr[bits];
        best = FeatureSet(bits, n);
      }
    }
  }
  return SubsetCandidates(ordered, best);
}

GakmResult AttrGakm(const MixtureOracle& oracle, const Eigen::VectorXd& x, int k,
                    double eta) {
  CheckEta(eta, 0.5, "attr_gakm");
  if (k < 1 || k > oracle.dims()) throw ArgumentError("attr_gakm: order k outside [1, n]");
  GakmResult out;
  out.values = AttrTable(oracle, x, k);
  out.selection = GakmCandidates(out.values, k).Select(eta);
  return out;
}

Eigen::VectorXd AttrGam(const MixtureOracle& oracle, const Eigen::VectorXd& x) {
  const int n = oracle.dims();
  Eigen::VectorXd values(n);
  for (int i = 0; i < n; ++i) {
    values(i) = 2.0 * AttrProb(oracle, x, FeatureSet::Singleton(i, n)) - 1.0;
  }
  return values;
}

ShapleyEstimate ShapleyExpectation(const MixtureOracle& oracle,
                                   const Eigen::VectorXd& x, int max_samples,
                                   Rng& rng) {
  const int n = oracle.dims();
  if (n <= 16) {
    const SubsetValues table = oracle.PosteriorTable(x);
    return ShapleyValues(n, [&](std::uint32_t mask) { return table[mask]; },
                         max_samples, rng);
  }
  return ShapleyValues(
      n, [&](std::uint32_t mask) { return oracle.Posterior(x, FeatureSet(mask, n)); },
      max_samples, rng);
}

ShapleyEstimate ShapBaseline(const MixtureOracle& oracle, const Eigen::VectorXd& x,
                             int max_samples, Rng& rng) {
  const int n = oracle.dims();
  if (x.size() != n) throw ArgumentError("shap_baseline: point dimension mismatch");
  Eigen::VectorXd z(n);
  return ShapleyValues(
      n,
      [&](std::uint32_t mask) {
        for (int i = 0; i < n; ++i) z(i) = (mask >> i) & 1u ? x(i) : oracle.mean()(i);
        return oracle.Posterior(z);
      },
      max_samples, rng);
}

Eigen::VectorXd GradientAttribution(const MixtureOracle& oracle,
                                    const Eigen::VectorXd& x,
                                    GradientVariant variant,
                                    const GradientConfig& config, Rng& rng) {
  Eigen::VectorXd out;
  switch (variant) {
    case GradientVariant::kGrad:
      out = oracle.Gradient(x);
      break;
    case GradientVariant::kGradXInput:
      out = x.cwiseProduct(oracle.Gradient(x));
      break;
    case GradientVariant::kIntegrated: {
      if (config.steps < 1) throw ArgumentError("integrated_grad: steps must be >= 1");
      const Eigen::VectorXd& base = oracle.mean();
      const Eigen::VectorXd delta = x - base;
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.size());
      for (int k = 0; k < config.steps; ++k) {
        const double t = (k + 0.5) / config.steps;
        acc += oracle.Gradient(base + t * delta);
      }
      out = delta.cwiseProduct(acc) / config.steps;
      break;
    }
    case GradientVariant::kExpected: {
      if (config.samples < 1) throw ArgumentError("expected_grad: samples must be >= 1");
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::uniform_int_distribution<Eigen::Index> pick(0, oracle.size() - 1);
      out = Eigen::VectorXd::Zero(x.size());
      for (int s = 0; s < config.samples; ++s) {
        const Eigen::VectorXd base = oracle.centroids().row(pick(rng)).transpose();
        const double alpha = unit(rng);
        const Eigen::VectorXd delta = x - base;
        out += delta.cwiseProduct(oracle.Gradient(base + alpha * delta));
      }
      out /= config.samples;
      break;
    }
  }
  if (config.absolute) out = out.cwiseAbs();
  return out;
}

Eigen::VectorXd WeightedRidge(const Eigen::MatrixXd& features,
                              const Eigen::VectorXd& targets,
                              const Eigen::VectorXd& weights, double ridge) {
  if (!(ridge > 0.0)) throw ArgumentError("ridge: strength must be positive");
  const double total = weights.sum();
  const Eigen::RowVectorXd x_mean = (weights.transpose() * features) / total;
  const double y_mean = weights.dot(targets) / total;
  const Eigen::MatrixXd xc = features.rowwise() - x_mean;
  const Eigen::VectorXd yc = targets.array() - y_mean;
  Eigen::MatrixXd gram = xc.transpose() * weights.asDiagonal() * xc;
  gram.diagonal().array() += ridge;
  return gram.ldlt().solve(xc.transpose() * weights.asDiagonal() * yc);
}

Eigen::VectorXd Lime(const MixtureOracle& oracle, const Eigen::VectorXd& x,
                     LimeMode mode, const LimeConfig& config, Rng& rng) {
  const int n = oracle.dims();
  if (x.size() != n) throw ArgumentError("lime: point dimension mismatch");
  if (config.samples < n + 1) throw ArgumentError("lime: samples must be >= n + 1");
  if (!(config.cell_width > 0.0)) throw ArgumentError("lime: cell width must be positive");

  const double width = 0.75 * std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd features = Eigen::MatrixXd::Zero(config.samples, n);
  Eigen::VectorXd targets(config.samples);
  Eigen::VectorXd weights(config.samples);
  Eigen::VectorXd z(n);

  if (mode == LimeMode::kContinuous) {
    const Eigen::VectorXd spread = CentroidSpread(oracle);
    std::normal_distribution<double> normal;
    // Row 0 is the explained point itself.
    for (int s = 0; s < config.samples; ++s) {
      for (int i = 0; i < n; ++i) features(s, i) = s == 0 ? 0.0 : normal(rng);
      z = x + features.row(s).transpose().cwiseProduct(spread);
      targets(s) = oracle.Posterior(z);
    }
    for (int s = 0; s < config.samples; ++s) {
      weights(s) = std::exp(-features.row(s).squaredNorm() / (width * width));
    }
  } else {
    std::uniform_int_distribution<Eigen::Index> pick(0, oracle.size() - 1);
    const auto cell = [&](double v) { return std::floor(v / config.cell_width); };
    for (int s = 0; s < config.samples; ++s) {
      for (int i = 0; i < n; ++i) {
        z(i) = s == 0 ? x(i) : oracle.centroids()(pick(rng), i);
        features(s, i) = cell(z(i)) == cell(x(i)) ? 1.0 : 0.0;
      }
      targets(s) = oracle.Posterior(z);
      const double d2 = static_cast<double>(n) - features.row(s).sum();
      weights(s) = std::exp(-d2 / (width * width));
    }
  }
  return WeightedRidge(features, targets, weights, config.ridge).cwiseAbs();
}

ArchipelagoResult ArchipelagoSelect(const SubsetValues& attr, double eta) {
  CheckEta(eta, 0.5, "archipelago");
  const int n = attr.dims();
  UnionFind components(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double single = std::max(attr[1u << i], attr[1u << j]);
      if (single < eta && attr[(1u << i) | (1u << j)] >= eta) components.Union(i, j);
    }
  }
  std::vector<std::uint32_t> group_bits(n, 0);
  for (int i = 0; i < n; ++i) group_bits[components.Find(i)] |= 1u << i;

  ArchipelagoResult out;
  for (std::uint32_t bits : group_bits) {
    if (bits != 0) out.groups.emplace_back(bits, n);
  }
  std::sort(out.groups.begin(), out.groups.end(), [&](const FeatureSet& a, const FeatureSet& b) {
    if (attr[a.bits()] != attr[b.bits()]) return attr[a.bits()] > attr[b.bits()];
    return a.bits() < b.bits();
  });

  if (attr[0] >= eta) {
    out.selection = FeatureSet::Empty(n);
    return out;
  }
  const FeatureSet* smallest = nullptr;
  for (const FeatureSet& g : out.groups) {
    if (attr[g.bits()] >= eta && (smallest == nullptr || g.size() < smallest->size())) {
      smallest = &g;
    }
  }
  if (smallest != nullptr) {
    out.selection = *smallest;
    return out;
  }
  FeatureSet acc = FeatureSet::Empty(n);
  for (const FeatureSet& g : out.groups) {
    acc = acc.Union(g);
    if (attr[acc.bits()] >= eta) {
      out.selection = acc;
      return out;
    }
  }
  out.selection = out.groups.front();
  return out;
}

ArchipelagoResult ArchipelagoStyle(const MixtureOracle& oracle,
                                   const Eigen::VectorXd& x, double eta) {
  return ArchipelagoSelect(AttrTable(oracle, x, oracle.dims()), eta);
}

InterpretableNnResult InterpretableNn(const MixtureOracle& oracle,
                                      const Eigen::VectorXd& x, int k, double eta) {
  CheckEta(eta, 0.0, "interpretable_nn");
  const int n = oracle.dims();
  if (k < 0 || k > n) throw ArgumentError("interpretable_nn: k outside [0, n]");
  InterpretableNnResult out;
  FeatureSet current = FeatureSet::Empty(n);
  out.trace.emplace_back(current, InterpretableNnMeasure(oracle.Posterior(x, current)));
  for (int step = 0; step < k; ++step) {
    int best_index = -1;
    double best_g = -1.0;
    for (int i = 0; i < n; ++i) {
      if (current.contains(i)) continue;
      const double g = InterpretableNnMeasure(oracle.Posterior(x, current.With(i)));
      if (g > best_g) {
        best_g = g;
        best_index = i;
      }
    }
    current = current.With(best_index);
    out.trace.emplace_back(current, best_g);
  }
  const auto best = std::max_element(
      out.trace.begin(), out.trace.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  out.candidates = SubsetCandidates(out.trace, best->first);
  out.selection = out.candidates.Select(eta);
  return out;
}

std::span<const MethodInfo> MethodRegistry() { return kMethods; }

std::string ValidMethodIds() {
  std::string ids;
  for (const MethodInfo& m : kMethods) {
    if (!ids.empty()) ids += ",";
    ids += m.id;
  }
  return ids;
}

const MethodInfo& FindMethod(std::string_view id) {
  for (const MethodInfo& m : kMethods) {
    if (m.id == id) return m;
  }
  throw ArgumentError("unknown method '" + std::string(id) + "' (valid: " +
                      ValidMethodIds() + ")");
}

void MethodConfig::Validate() const {
  FindMethod(id);
  if (shapley_samples < 1) throw ArgumentError("method config: shapley samples must be >= 1");
  if (gradient.steps < 1 || gradient.samples < 1) {
    throw ArgumentError("method config: gradient steps and samples must be >= 1");
  }
  if (lime.samples < 2) throw ArgumentError("method config: lime samples must be >= 2");
  if (!(lime.ridge > 0.0)) throw ArgumentError("method config: ridge must be positive");
  if (!(lime.cell_width > 0.0)) throw ArgumentError("method config: cell width must be positive");
}

FeatureSet MethodOutput::Select(double threshold) const {
  if (kind == MethodKind::kFeature) return SelectFromFeatures(feature_values, threshold);
  return selector ? selector(threshold) : candidates.Select(threshold);
}

MethodOutput RunMethod(const MethodConfig& config, const MixtureOracle& oracle,
                       const Eigen::VectorXd& x, Rng& rng) {
  const MethodInfo& info = FindMethod(config.id);
  const int n = oracle.dims();
  MethodOutput out;
  out.kind = info.kind;
  const std::string_view id = info.id;
  const auto gradient = [&](GradientVariant v) {
    GradientConfig g = config.gradient;
    g.absolute = true;
    return GradientAttribution(oracle, x, v, g, rng);
  };
  const auto gakm = [&](int k) {
    k = std::min(k, n);
    return GakmCandidates(AttrTable(oracle, x, k), k);
  };

  if (id == "lime_cat") {
    out.feature_values = Lime(oracle, x, LimeMode::kCategorical, config.lime, rng);
  } else if (id == "lime_cont") {
    out.feature_values = Lime(oracle, x, LimeMode::kContinuous, config.lime, rng);
  } else if (id == "attr_gam") {
    out.feature_values = AttrGam(oracle, x);
  } else if (id == "shapley_e") {
    out.feature_values =
        ShapleyExpectation(oracle, x, config.shapley_samples, rng).values.cwiseAbs();
  } else if (id == "shap_baseline") {
    out.feature_values = ShapBaseline(oracle, x, config.shapley_samples, rng).values.cwiseAbs();
  } else if (id == "grad") {
    out.feature_values = gradient(GradientVariant::kGrad);
  } else if (id == "grad_x_input") {
    out.feature_values = gradient(GradientVariant::kGradXInput);
  } else if (id == "integrated_grad") {
    out.feature_values = gradient(GradientVariant::kIntegrated);
  } else if (id == "expected_grad") {
    out.feature_values = gradient(GradientVariant::kExpected);
  } else if (id == "attr_gainf") {
    out.candidates = gakm(n);
  } else if (id == "attr_ga2m") {
    out.candidates = gakm(2);
  } else if (id == "attr_ga3m") {
    out.candidates = gakm(3);
  } else if (id == "attr_ga4m") {
    out.candidates = gakm(4);
  } else if (id == "interpretable_nn") {
    out.candidates = InterpretableNn(oracle, x, n, 1.0).candidates;
  } else {
    auto attr = std::make_shared<const SubsetValues>(AttrTable(oracle, x, n));
    out.selector = [attr](double eta) { return ArchipelagoSelect(*attr, eta).selection; };
  }
  return out;
}

}  // namespace fattr
