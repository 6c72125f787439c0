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

// Johnson-Lindenstrauss random projections (gaussian, Rademacher, circulant,
// toeplitz) and the PCA / random-feature-selection baselines.
//
// A JL plan maps x to (1/sqrt(k)) W x with W a k x d random matrix. For a
// fixed vector v the squared norm of the image stays within (1 +/- eps) of
// |v|^2 except with probability at most 2 exp(-eps^2 k / 6), so pairwise
// distances of a point set survive projection to k = O(log N / eps^2).

#ifndef ODACCEL_PROJECTION_H_
#define ODACCEL_PROJECTION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odaccel/data.h"

namespace odaccel {

enum class ProjectionMethod {
  kNone,
  kBasic,
  kDiscrete,
  kCirculant,
  kToeplitz,
  kPca,
  kRandomSelection,
};

inline constexpr std::size_t kDefaultProjectionThreshold = 20;
inline constexpr double kDefaultDistortionEpsilon = 0.5;

std::string_view ProjectionMethodName(ProjectionMethod method);
// Accepts none, basic, discrete, circulant, toeplitz, pca, rs.
ProjectionMethod ParseProjectionMethod(std::string_view name);
bool IsJohnsonLindenstrauss(ProjectionMethod method);

// Immutable k x d linear map. Construct through MakePlan / FitPcaPlan /
// IdentityPlan; the constructor checks structural invariants.
class ProjectionPlan {
 public:
  ProjectionPlan(ProjectionMethod method, std::size_t source_dim,
                 std::size_t target_dim, std::uint64_t seed,
                 std::vector<double> matrix);

  ProjectionMethod method() const { return method_; }
  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }
  std::uint64_t seed() const { return seed_; }
  // Row-major k x d; empty for kNone.
  const std::vector<double>& matrix() const { return matrix_; }
  double at(std::size_t i, std::size_t j) const {
    return matrix_[i * source_dim_ + j];
  }
  // Multiplier applied after W: 1/sqrt(k) for JL variants, 1 otherwise.
  double scale() const;

  // Projects every row; labels carry through. Throws DataError when
  // data.cols() != source_dim().
  DataMatrix Apply(const DataMatrix& data) const;

 private:
  ProjectionMethod method_;
  std::size_t source_dim_;
  std::size_t target_dim_;
  std::uint64_t seed_;
  std::vector<double> matrix_;
};

ProjectionPlan IdentityPlan(std::size_t d);

// Projection is disabled (nullopt) when d <= theta; otherwise k = ceil(d/2).
std::optional<std::size_t> DecideTargetDim(std::size_t d, std::size_t theta);

// Builds a data-independent plan. Throws std::invalid_argument for k outside
// [1, d], for kPca (use FitPcaPlan), and for kNone with k != d.
ProjectionPlan MakePlan(ProjectionMethod method, std::size_t d, std::size_t k,
                        std::uint64_t seed);

// Top-k principal axes of the column-centered training matrix, sign-fixed so
// the largest-magnitude loading of each axis is positive.
ProjectionPlan FitPcaPlan(const DataMatrix& train, std::size_t k,
                          std::uint64_t seed);

// Dispatches to FitPcaPlan for kPca and MakePlan otherwise.
ProjectionPlan BuildPlan(ProjectionMethod method, const DataMatrix& train,
                         std::size_t k, std::uint64_t seed);

struct DistortionReport {
  double epsilon = 0.0;
  double fraction_within = 0.0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  std::size_t pairs = 0;
};

// Squared-distance ratios |f(x_i) - f(x_j)|^2 / |x_i - x_j|^2 over all pairs.
// Pairs with zero original distance are counted within when the projected
// distance is also zero. Throws on row-count mismatch or fewer than 2 rows.
DistortionReport MeasureDistortion(const DataMatrix& original,
                                   const DataMatrix& projected,
                                   double epsilon = kDefaultDistortionEpsilon);

}  // namespace odaccel

#endif  // ODACCEL_PROJECTION_H_
