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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "fattr/fanova.h"
#include "fattr/feature_set.h"
#include "fattr/proxy_sets.h"
#include "fattr/relation.h"
#include "fattr/selection.h"

namespace fattr {
namespace {

FeatureSet Set(std::initializer_list<int> one_based, int n) {
  std::vector<int> idx;
  for (int i : one_based) idx.push_back(i - 1);
  return FeatureSet::FromIndices(idx, n);
}

LabeledRelation AndGrid() {
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 0, 1, 1, 0, 1, 1;
  const std::vector<int> labels = {0, 0, 0, 1};
  return LabeledRelation(pts, labels);
}

// Independent Definition-3 check: scans every pair of points directly.
bool BruteFunctional(const LabeledRelation& r, std::size_t j, std::uint32_t mask) {
  for (std::size_t k = 0; k < r.size(); ++k) {
    bool same = true;
    for (int i = 0; i < r.dims(); ++i) {
      if (((mask >> i) & 1u) && r.points()(j, i) != r.points()(k, i)) same = false;
    }
    if (same && r.label(k) != r.label(j)) return false;
  }
  return true;
}

// Coordinates drawn from a tiny alphabet so that projections collide often.
LabeledRelation RandomRelation(std::mt19937_64& rng, bool single_valued) {
  std::uniform_int_distribution<int> dim_dist(1, 6);
  std::uniform_int_distribution<int> count_dist(1, 64);
  std::uniform_int_distribution<int> coord_dist(0, 2);
  std::uniform_int_distribution<int> label_dist(0, 1);
  const int n = dim_dist(rng);
  const int m = count_dist(rng);
  Eigen::MatrixXd pts(m, n);
  std::vector<int> labels(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) pts(r, c) = coord_dist(rng);
    labels[r] = label_dist(rng);
  }
  if (single_valued) {
    // Relabel duplicates with the label of their first occurrence.
    for (int r = 0; r < m; ++r) {
      for (int k = 0; k < r; ++k) {
        if (pts.row(k) == pts.row(r)) {
          labels[r] = labels[k];
          break;
        }
      }
    }
  }
  return LabeledRelation(pts, labels);
}

TEST(FeatureSetTest, BasicAlgebra) {
  const FeatureSet s = Set({1, 3}, 4);
  EXPECT_EQ(s.bits(), 0b0101u);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.Complement(), Set({2, 4}, 4));
  EXPECT_EQ(s.ToString(), "{1,3}");
  EXPECT_TRUE(Set({3}, 4).IsSubsetOf(s));
  EXPECT_THROW(FeatureSet(0b100u, 2), ArgumentError);
  EXPECT_THROW(FeatureSet(0u, 33), ArgumentError);
  EXPECT_EQ(FeatureSet::Full(32).size(), 32);
}

TEST(FeatureSetTest, SubsetsOfSizeAscending) {
  std::vector<std::uint32_t> seen;
  ForEachSubsetOfSize(4, 2, [&](FeatureSet s) { seen.push_back(s.bits()); });
  EXPECT_EQ(seen, (std::vector<std::uint32_t>{3, 5, 6, 9, 10, 12}));
  int count = 0;
  ForEachSubsetOfSize(5, 0, [&](FeatureSet s) {
    EXPECT_TRUE(s.empty());
    ++count;
  });
  ForEachSubsetOfSize(5, 5, [&](FeatureSet s) {
    EXPECT_EQ(s.size(), 5);
    ++count;
  });
  EXPECT_EQ(count, 2);
}

TEST(ProjectTest, CanonicalProjection) {
  Eigen::Vector3d x(1.0, 2.0, 3.0);
  EXPECT_EQ(Project(x, Set({1, 3}, 3)), Eigen::Vector3d(1.0, 0.0, 3.0));
  EXPECT_EQ(Project(x, FeatureSet::Full(3)), x);
  EXPECT_EQ(Project(x, FeatureSet::Empty(3)), Eigen::Vector3d::Zero());
  EXPECT_THROW(Project(x, FeatureSet::Full(2)), ArgumentError);
}

TEST(RelationTest, DeduplicatesPairsButKeepsContradictions) {
  Eigen::MatrixXd pts(3, 1);
  pts << 1, 1, 1;
  const std::vector<int> labels = {0, 0, 1};
  LabeledRelation r(pts, labels);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_FALSE(IsFunction(r));
  EXPECT_THROW(SolveInstanceSelection(r, 0), NotFunctionalError);
  EXPECT_THROW(SolveGlobalSelection(r), NotFunctionalError);
  const std::vector<int> short_labels = {0};
  EXPECT_THROW(LabeledRelation(pts, short_labels), ArgumentError);
}

TEST(FunctionalDomainTest, AndGrid) {
  const LabeledRelation r = AndGrid();
  EXPECT_EQ(FunctionalDomain(r, Set({1, 2}, 2)), (PointSet{0, 1, 2, 3}));
  EXPECT_EQ(FunctionalDomain(r, FeatureSet::Empty(2)), PointSet{});
  // Points (0,0) and (1,0): second coordinate 0.
  EXPECT_EQ(FunctionalDomain(r, Set({2}, 2)), (PointSet{0, 2}));
  EXPECT_EQ(FunctionalDomain(r, Set({1}, 2)), (PointSet{0, 1}));
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    const PointSet domain = FunctionalDomain(r, FeatureSet(mask, 2));
    for (std::size_t j = 0; j < 4; ++j) {
      const bool in = std::binary_search(domain.begin(), domain.end(), j);
      EXPECT_EQ(in, BruteFunctional(r, j, mask)) << mask << " " << j;
    }
  }
}

TEST(InstanceSelectionTest, AndGrid) {
  const LabeledRelation r = AndGrid();
  const SelectionSolution origin = SolveInstanceSelection(r, 0);
  EXPECT_EQ(origin.cardinality, 1);
  EXPECT_EQ(origin.minimal_sets,
            (std::vector<FeatureSet>{Set({1}, 2), Set({2}, 2)}));
  const SelectionSolution corner = SolveInstanceSelection(r, 3);
  EXPECT_EQ(corner.minimal_sets, (std::vector<FeatureSet>{Set({1, 2}, 2)}));
  // (1,0): fixing x2 = 0 leaves only label 0.
  EXPECT_EQ(SolveInstanceSelection(r, 2).minimal_sets,
            (std::vector<FeatureSet>{Set({2}, 2)}));
}

TEST(InstanceSelectionTest, SinglePointSelectsNothing) {
  Eigen::MatrixXd pts(1, 2);
  pts << 5, 5;
  const std::vector<int> labels = {1};
  const SelectionSolution s = SolveInstanceSelection(LabeledRelation(pts, labels), 0);
  EXPECT_EQ(s.cardinality, 0);
  EXPECT_EQ(s.minimal_sets, (std::vector<FeatureSet>{FeatureSet::Empty(2)}));
}

TEST(GlobalSelectionTest, Examples) {
  EXPECT_EQ(SolveGlobalSelection(AndGrid()).minimal_sets,
            (std::vector<FeatureSet>{Set({1, 2}, 2)}));

  Eigen::MatrixXd pts(3, 2);
  pts << 0, 1, 2, 3, 4, 5;
  const std::vector<int> same = {1, 1, 1};
  EXPECT_EQ(SolveGlobalSelection(LabeledRelation(pts, same)).minimal_sets,
            (std::vector<FeatureSet>{FeatureSet::Empty(2)}));

  // x2 duplicates x1; label thresholds x1.
  Eigen::MatrixXd dup(4, 2);
  dup << 0, 0, 1, 1, 2, 2, 3, 3;
  const std::vector<int> threshold = {0, 0, 1, 1};
  EXPECT_EQ(SolveGlobalSelection(LabeledRelation(dup, threshold)).minimal_sets,
            (std::vector<FeatureSet>{Set({1}, 2), Set({2}, 2)}));
}

TEST(Property1Test, ConstantSelectionsAreStructured) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const LabeledRelation r = RandomRelation(rng, true);
    const int n = r.dims();
    EXPECT_DOUBLE_EQ(
        CheckProperty1(r, std::vector<FeatureSet>(r.size(), FeatureSet::Full(n))).rate,
        1.0);
    EXPECT_DOUBLE_EQ(
        CheckProperty1(r, std::vector<FeatureSet>(r.size(), FeatureSet::Empty(n))).rate,
        1.0);
  }
}

TEST(Property1Test, AndGridSelections) {
  const LabeledRelation r = AndGrid();
  // (0,0) has two minima. Picking {1} there breaks (1,0), whose x2 = 0 group
  // contains (0,0) with a selection outside {2}.
  const std::vector<FeatureSet> truth = {Set({1}, 2), Set({1}, 2), Set({2}, 2),
                                         Set({1, 2}, 2)};
  const Property1Result res = CheckProperty1(r, truth);
  EXPECT_EQ(res.verified, (std::vector<bool>{true, true, false, true}));
  EXPECT_DOUBLE_EQ(res.rate, 0.75);
  // (0,0) selects {1}; (0,1) shares x1 = 0 but selects {1,2}.
  const std::vector<FeatureSet> broken = {Set({1}, 2), Set({1, 2}, 2),
                                          Set({1, 2}, 2), Set({1, 2}, 2)};
  const Property1Result res2 = CheckProperty1(r, broken);
  EXPECT_EQ(res2.verified, (std::vector<bool>{false, true, true, true}));
  EXPECT_THROW(CheckProperty1(r, {Set({1}, 2)}), ArgumentError);
}

TEST(Property2Test, HoldsOnAndGridAndRandomRelations) {
  EXPECT_TRUE(CheckProperty2(AndGrid()));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 500; ++t) {
    const LabeledRelation r = RandomRelation(rng, t % 2 == 0);
    ASSERT_TRUE(CheckProperty2(r)) << "relation " << t;
  }
}

TEST(Property2Test, DetectsCorruptedDomain) {
  const LabeledRelation r = AndGrid();
  DomainTable domains = ComputeAllDomains(r);
  ASSERT_TRUE(CheckProperty2(domains, 2));
  // Drop (0,0) from A_{[n]}; it still sits in A_{1}.
  domains[0b11].erase(domains[0b11].begin());
  EXPECT_FALSE(CheckProperty2(domains, 2));
}

TEST(SolverTest, MinimalityAndCompletenessAgainstBruteForce) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim_dist(1, 8);
  std::uniform_int_distribution<int> count_dist(1, 40);
  std::uniform_int_distribution<int> coord_dist(0, 1);
  for (int t = 0; t < 200; ++t) {
    const int n = dim_dist(rng);
    const int m = count_dist(rng);
    Eigen::MatrixXd pts(m, n);
    std::vector<int> labels(m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) pts(r, c) = coord_dist(rng);
      labels[r] = static_cast<int>(pts.row(r).sum()) % 3 == 0 ? 1 : coord_dist(rng);
    }
    for (int r = 0; r < m; ++r) {
      for (int k = 0; k < r; ++k) {
        if (pts.row(k) == pts.row(r)) labels[r] = labels[k];
      }
    }
    const LabeledRelation rel(pts, labels);
    for (std::size_t j = 0; j < rel.size(); ++j) {
      const SelectionSolution sol = SolveInstanceSelection(rel, j);
      int best = n + 1;
      std::vector<FeatureSet> expected;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!BruteFunctional(rel, j, mask)) continue;
        const int c = std::popcount(mask);
        if (c < best) {
          best = c;
          expected.clear();
        }
        if (c == best) expected.push_back(FeatureSet(mask, n));
      }
      std::sort(expected.begin(), expected.end());
      ASSERT_EQ(sol.minimal_sets, expected);
      ASSERT_EQ(sol.cardinality, best);
      for (const FeatureSet& s : sol.minimal_sets) {
        for (int i : s.Indices()) {
          const PointSet d = FunctionalDomain(rel, s.Without(i));
          EXPECT_FALSE(std::binary_search(d.begin(), d.end(), j));
        }
      }
    }
  }
}

// Eq. (8) read literally: x' agrees with x off I, and f differs.
PointSet BruteAlternate(const LabeledRelation& r, std::uint32_t mask) {
  PointSet out;
  for (std::size_t j = 0; j < r.size(); ++j) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      bool same_off = true;
      for (int i = 0; i < r.dims(); ++i) {
        if (!((mask >> i) & 1u) && r.points()(j, i) != r.points()(k, i)) {
          same_off = false;
        }
      }
      if (same_off && r.label(j) != r.label(k)) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

TEST(ProxySetsTest, AndGridExamples) {
  const LabeledRelation r = AndGrid();
  const ProxySets p1 = ComputeProxySets(r, Set({1}, 2));
  EXPECT_TRUE(std::includes(p1.alternate.begin(), p1.alternate.end(),
                            p1.baseline.begin(), p1.baseline.end()));
  const ProxySets p2 = ComputeProxySets(r, Set({2}, 2));
  EXPECT_EQ(FunctionalDomain(r, Set({1}, 2)), ComplementOf(p2.alternate, 4));

  // Point (1,0): holding x1 = 1 and moving x2 reaches f(1,1) = 1, so it lies in
  // B_{2}; holding x2 = 0 and moving x1 only reaches f(0,0) = 0.
  EXPECT_EQ(p2.alternate, BruteAlternate(r, 0b10));
  EXPECT_EQ(p1.alternate, BruteAlternate(r, 0b01));
  EXPECT_TRUE(std::binary_search(p2.alternate.begin(), p2.alternate.end(), 2u));
  EXPECT_FALSE(std::binary_search(p1.alternate.begin(), p1.alternate.end(), 2u));
  EXPECT_EQ(p1.alternate, (PointSet{1, 3}));
  EXPECT_EQ(p2.alternate, (PointSet{2, 3}));
}

TEST(ProxySetsTest, DualityAndInclusionOnRandomRelations) {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 500; ++t) {
    const LabeledRelation r = RandomRelation(rng, true);
    const int n = r.dims();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const FeatureSet subset(mask, n);
      const ProxySets p = ComputeProxySets(r, subset);
      ASSERT_EQ(p.alternate, ComplementOf(FunctionalDomain(r, subset.Complement()), r.size()));
      ASSERT_TRUE(std::includes(p.alternate.begin(), p.alternate.end(),
                                p.baseline.begin(), p.baseline.end()));
      // A_I inside the complement of C_{complement(I)}.
      const PointSet domain = FunctionalDomain(r, subset);
      const PointSet c_bar = ComplementOf(ComputeProxySets(r, subset.Complement()).baseline, r.size());
      ASSERT_TRUE(std::includes(c_bar.begin(), c_bar.end(), domain.begin(), domain.end()));
    }
  }
}

TEST(FanovaTest, AndGridMatchesHandDecomposition) {
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 0, 1, 1, 0, 1, 1;
  const Eigen::Vector4d f(0, 0, 0, 1);
  const FanovaDecomposition d = FanovaDecompose(pts, f);
  const double mu = 0.25;
  EXPECT_NEAR(d.components.at(FeatureSet::Empty(2))(0), mu, 1e-15);
  const Eigen::VectorXd& f1 = d.components.at(Set({1}, 2));
  EXPECT_NEAR(f1(0), -mu, 1e-15);  // x1 = 0
  EXPECT_NEAR(f1(2), mu, 1e-15);   // x1 = 1
  const Eigen::VectorXd& f12 = d.components.at(Set({1, 2}, 2));
  EXPECT_NEAR(f12(0), mu, 1e-15);
  EXPECT_NEAR(f12(1), -mu, 1e-15);
  EXPECT_NEAR(f12(3), mu, 1e-15);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4);
  for (const auto& [s, v] : d.components) sum += v;
  EXPECT_LE((sum - f).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FanovaTest, SelectionDivergesFromInteractionSupport) {
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 0, 1, 1, 0, 1, 1;
  const FanovaDecomposition d = FanovaDecompose(pts, Eigen::Vector4d(0, 0, 0, 1));
  const LabeledRelation r = AndGrid();
  PointSet interaction_support, bivariate_selection;
  for (std::size_t j = 0; j < 4; ++j) {
    if (std::abs(d.components.at(Set({1, 2}, 2))(j)) > 1e-12) {
      interaction_support.push_back(j);
    }
    const auto sol = SolveInstanceSelection(r, j);
    if (sol.minimal_sets == std::vector<FeatureSet>{Set({1, 2}, 2)}) {
      bivariate_selection.push_back(j);
    }
  }
  EXPECT_EQ(interaction_support, (PointSet{0, 1, 2, 3}));
  EXPECT_EQ(bivariate_selection, (PointSet{3}));
}

TEST(FanovaTest, RandomGridsReconstructAndCenter) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 4;
    std::vector<int> levels(n);
    Eigen::Index m = 1;
    for (int i = 0; i < n; ++i) {
      levels[i] = 2 + (t + i) % 3;
      m *= levels[i];
    }
    Eigen::MatrixXd pts(m, n);
    Eigen::VectorXd f(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      Eigen::Index rest = r;
      for (int i = 0; i < n; ++i) {
        pts(r, i) = 0.5 * static_cast<double>(rest % levels[i]);
        rest /= levels[i];
      }
      f(r) = val(rng);
    }
    const FanovaDecomposition d = FanovaDecompose(pts, f);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(m);
    for (const auto& [subset, values] : d.components) {
      sum += values;
      if (subset.empty()) continue;
      // Averaging along any own axis, holding the other coordinates, gives 0.
      for (int axis : subset.Indices()) {
        const FeatureSet others = FeatureSet::Full(n).Without(axis);
        for (Eigen::Index r = 0; r < m; ++r) {
          double acc = 0.0;
          int count = 0;
          for (Eigen::Index k = 0; k < m; ++k) {
            if (SameProjection(pts.row(r), pts.row(k), others)) {
              acc += values(k);
              ++count;
            }
          }
          ASSERT_NEAR(acc / count, 0.0, 1e-12);
        }
      }
    }
    ASSERT_LE((sum - f).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FanovaTest, RejectsNonProductGrid) {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 0, 1, 1, 0;
  EXPECT_THROW(FanovaDecompose(pts, Eigen::Vector3d(0, 0, 1)), ArgumentError);
}

}  // namespace
}  // namespace fattr
