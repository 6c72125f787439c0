/*
 * Copyright 2026 The odaccel Authors.
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

#include "odaccel/projection.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "odaccel/error.h"
#include "odaccel/random.h"
#include "test_util.h"

namespace odaccel {
namespace {

const std::vector<ProjectionMethod> kDataFree = {
    ProjectionMethod::kBasic, ProjectionMethod::kDiscrete,
    ProjectionMethod::kCirculant, ProjectionMethod::kToeplitz,
    ProjectionMethod::kRandomSelection};

TEST(DecideTargetDimTest, ThresholdRule) {
  EXPECT_EQ(DecideTargetDim(5, 20), std::nullopt);
  EXPECT_EQ(DecideTargetDim(20, 20), std::nullopt);
  EXPECT_EQ(DecideTargetDim(21, 20), 11u);
  EXPECT_EQ(DecideTargetDim(100, 20), 50u);
  EXPECT_EQ(DecideTargetDim(3, 1), 2u);
}

TEST(ProjectionNameTest, RoundTrips) {
  for (ProjectionMethod m :
       {ProjectionMethod::kNone, ProjectionMethod::kBasic,
        ProjectionMethod::kDiscrete, ProjectionMethod::kCirculant,
        ProjectionMethod::kToeplitz, ProjectionMethod::kPca,
        ProjectionMethod::kRandomSelection}) {
    EXPECT_EQ(ParseProjectionMethod(ProjectionMethodName(m)), m);
  }
  EXPECT_THROW(ParseProjectionMethod("gaussian"), std::invalid_argument);
}

TEST(MakePlanTest, ShapeAndSeedDeterminism) {
  for (ProjectionMethod m : kDataFree) {
    const ProjectionPlan a = MakePlan(m, 12, 5, 3);
    EXPECT_EQ(a.source_dim(), 12u);
    EXPECT_EQ(a.target_dim(), 5u);
    EXPECT_EQ(a.matrix().size(), 60u);
    EXPECT_EQ(MakePlan(m, 12, 5, 3).matrix(), a.matrix());
    EXPECT_NE(MakePlan(m, 12, 5, 4).matrix(), a.matrix());
  }
}

TEST(MakePlanTest, RejectsBadTargets) {
  EXPECT_THROW(MakePlan(ProjectionMethod::kBasic, 5, 0, 0),
               std::invalid_argument);
  EXPECT_THROW(MakePlan(ProjectionMethod::kBasic, 5, 6, 0),
               std::invalid_argument);
  EXPECT_THROW(MakePlan(ProjectionMethod::kPca, 5, 2, 0),
               std::invalid_argument);
  EXPECT_THROW(MakePlan(ProjectionMethod::kNone, 5, 2, 0),
               std::invalid_argument);
}

TEST(MakePlanTest, DiscreteEntriesAreSigns) {
  const ProjectionPlan p = MakePlan(ProjectionMethod::kDiscrete, 30, 10, 1);
  int positive = 0;
  for (double v : p.matrix()) {
    ASSERT_TRUE(v == 1.0 || v == -1.0);
    positive += v > 0;
  }
  EXPECT_GT(positive, 100);
  EXPECT_LT(positive, 200);
}

TEST(MakePlanTest, BasicEntriesLookStandardNormal) {
  const ProjectionPlan p = MakePlan(ProjectionMethod::kBasic, 200, 100, 1);
  double sum = 0.0, sq = 0.0;
  for (double v : p.matrix()) {
    sum += v;
    sq += v * v;
  }
  const double n = static_cast<double>(p.matrix().size());
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(MakePlanTest, CirculantRowsAreRotations) {
  const ProjectionPlan p = MakePlan(ProjectionMethod::kCirculant, 7, 4, 9);
  for (std::size_t i = 1; i < 4; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(p.at(i, (j + 1) % 7), p.at(i - 1, j));
    }
  }
}

TEST(MakePlanTest, ToeplitzDiagonalsAreConstant) {
  const ProjectionPlan p = MakePlan(ProjectionMethod::kToeplitz, 9, 5, 9);
  for (std::size_t i = 1; i < 5; ++i) {
    for (std::size_t j = 1; j < 9; ++j) {
      EXPECT_EQ(p.at(i, j), p.at(i - 1, j - 1));
    }
  }
  // Not circulant: the first column is drawn independently.
  EXPECT_NE(p.at(1, 0), p.at(0, 8));
}

TEST(MakePlanTest, RandomSelectionPicksDistinctColumns) {
  const ProjectionPlan p =
      MakePlan(ProjectionMethod::kRandomSelection, 10, 4, 2);
  EXPECT_DOUBLE_EQ(p.scale(), 1.0);
  std::set<std::size_t> columns;
  std::size_t last = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < 10; ++j) {
      if (p.at(i, j) == 1.0) {
        ++ones;
        if (i > 0) {
          EXPECT_GT(j, last);
        }
        last = j;
        columns.insert(j);
      } else {
        EXPECT_EQ(p.at(i, j), 0.0);
      }
    }
    EXPECT_EQ(ones, 1u);
  }
  EXPECT_EQ(columns.size(), 4u);
}

TEST(ApplyTest, MultipliesByScaledMatrix) {
  const DataMatrix x = testing::GaussianMatrix(6, 8, 3);
  const ProjectionPlan p = MakePlan(ProjectionMethod::kBasic, 8, 3, 5);
  EXPECT_DOUBLE_EQ(p.scale(), 1.0 / std::sqrt(3.0));
  const DataMatrix y = p.Apply(x);
  ASSERT_EQ(y.rows(), 6u);
  ASSERT_EQ(y.cols(), 3u);
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t i = 0; i < 3; ++i) {
      double expected = 0.0;
      for (std::size_t j = 0; j < 8; ++j) expected += p.at(i, j) * x(r, j);
      EXPECT_NEAR(y(r, i), expected / std::sqrt(3.0), 1e-12);
    }
  }
  EXPECT_THROW(p.Apply(testing::GaussianMatrix(2, 7, 1)), DataError);
}

TEST(ApplyTest, IdentityKeepsData) {
  const DataMatrix x = SynthBlob(10, 2, 4, 1);
  const DataMatrix y = IdentityPlan(4).Apply(x);
  EXPECT_EQ(y.values(), x.values());
  EXPECT_EQ(*y.labels(), *x.labels());
}

TEST(PcaTest, RecoversDominantAxisWithSignRule) {
  // Variance concentrated along (1, 2, 0) / sqrt(5).
  Rng rng(4);
  std::vector<double> v;
  for (int i = 0; i < 400; ++i) {
    const double t = 10.0 * rng.Normal();
    v.push_back(t + 0.1 * rng.Normal());
    v.push_back(2.0 * t + 0.1 * rng.Normal());
    v.push_back(0.1 * rng.Normal() + 5.0);
  }
  const DataMatrix x(400, 3, v);
  const ProjectionPlan p = FitPcaPlan(x, 2, 0);
  EXPECT_NEAR(p.at(0, 0), 1.0 / std::sqrt(5.0), 1e-3);
  EXPECT_NEAR(p.at(0, 1), 2.0 / std::sqrt(5.0), 1e-3);
  EXPECT_NEAR(p.at(0, 2), 0.0, 1e-2);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < 3; ++j) dot += p.at(a, j) * p.at(b, j);
      EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-10);
    }
  }
  EXPECT_DOUBLE_EQ(p.scale(), 1.0);
  EXPECT_EQ(BuildPlan(ProjectionMethod::kPca, x, 2, 0).matrix(), p.matrix());
}

TEST(DistortionTest, IdentityIsPerfect) {
  const DataMatrix x = testing::GaussianMatrix(20, 5, 1);
  const DistortionReport r = MeasureDistortion(x, x);
  EXPECT_EQ(r.pairs, 190u);
  EXPECT_DOUBLE_EQ(r.fraction_within, 1.0);
  EXPECT_DOUBLE_EQ(r.min_ratio, 1.0);
  EXPECT_DOUBLE_EQ(r.max_ratio, 1.0);
}

TEST(DistortionTest, DuplicatePointsCountWhenStillEqual) {
  const DataMatrix x(3, 2, {1, 0, 1, 0, 0, 0});
  const DataMatrix y(3, 1, {1, 1, 0});
  const DistortionReport r = MeasureDistortion(x, y);
  EXPECT_EQ(r.pairs, 3u);
  EXPECT_DOUBLE_EQ(r.fraction_within, 1.0);
}

// Every JL variant keeps most squared distances within (1 +/- 0.5) at k=100.
TEST(DistortionTest, JlVariantsPreserveDistances) {
  const DataMatrix x = testing::GaussianMatrix(120, 200, 17);
  for (ProjectionMethod m :
       {ProjectionMethod::kBasic, ProjectionMethod::kDiscrete,
        ProjectionMethod::kCirculant, ProjectionMethod::kToeplitz}) {
    ASSERT_TRUE(IsJohnsonLindenstrauss(m));
    const ProjectionPlan p = MakePlan(m, 200, 100, 23);
    const DistortionReport r = MeasureDistortion(x, p.Apply(x), 0.5);
    EXPECT_GE(r.fraction_within, 0.95) << ProjectionMethodName(m);
  }
  EXPECT_FALSE(IsJohnsonLindenstrauss(ProjectionMethod::kPca));
  EXPECT_FALSE(IsJohnsonLindenstrauss(ProjectionMethod::kRandomSelection));
}

}  // namespace
}  // namespace odaccel
