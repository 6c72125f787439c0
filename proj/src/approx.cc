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

#include "odaccel/approx.h"

#include <algorithm>
#include <stdexcept>

#include "odaccel/error.h"

namespace odaccel {

std::vector<double> PseudoTargets(const FittedDetector& detector) {
  return detector.train_scores();
}

Approximator Approximate(const FittedDetector& detector,
                         const DataMatrix& x_original,
                         const ForestParams& params) {
  const std::vector<double> targets = PseudoTargets(detector);
  if (x_original.rows() != targets.size()) {
    throw DataError("approximation needs " + std::to_string(targets.size()) +
                    " training rows, got " + std::to_string(x_original.rows()));
  }
  if (x_original.cols() != detector.plan().source_dim()) {
    throw DataError("approximation expects the original " +
                    std::to_string(detector.plan().source_dim()) +
                    " features, got " + std::to_string(x_original.cols()));
  }
  return Approximator{detector.spec(), detector.plan(),
                      FitForest(x_original, targets, params), true};
}

std::vector<double> PredictApprox(const Approximator& approximator,
                                  const DataMatrix& x_test) {
  return approximator.forest.Predict(x_test);
}

bool ShouldApproximate(const DetectorSpec& spec,
                       std::optional<bool> override_flag) {
  if (override_flag) return *override_flag;
  switch (spec.algo) {
    case DetectorAlgo::kHbos:
    case DetectorAlgo::kIForest:
      return false;
    case DetectorAlgo::kKnn:
    case DetectorAlgo::kAknn:
    case DetectorAlgo::kLof:
    case DetectorAlgo::kFastAbod:
    case DetectorAlgo::kFeatureBagging:
      return true;
  }
  return false;
}

std::vector<SurfacePoint> DecisionSurface(const FittedDetector& detector,
                                          const Approximator& approximator,
                                          const DataMatrix& data,
                                          std::size_t resolution,
                                          double padding) {
  if (data.cols() != 2) {
    throw DataError("decision surfaces need 2-feature data");
  }
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  double lo[2];
  double hi[2];
  for (std::size_t j = 0; j < 2; ++j) {
    lo[j] = hi[j] = data(0, j);
    for (std::size_t i = 1; i < data.rows(); ++i) {
      lo[j] = std::min(lo[j], data(i, j));
      hi[j] = std::max(hi[j], data(i, j));
    }
    const double extent = std::max(hi[j] - lo[j], 1e-9);
    lo[j] -= padding * extent;
    hi[j] += padding * extent;
  }
  std::vector<double> grid;
  grid.reserve(resolution * resolution * 2);
  const double steps = static_cast<double>(resolution - 1);
  for (std::size_t a = 0; a < resolution; ++a) {
    for (std::size_t b = 0; b < resolution; ++b) {
      grid.push_back(lo[0] + (hi[0] - lo[0]) * static_cast<double>(b) / steps);
      grid.push_back(lo[1] + (hi[1] - lo[1]) * static_cast<double>(a) / steps);
    }
  }
  const DataMatrix points(resolution * resolution, 2, std::move(grid));
  const auto source = detector.Score(points);
  const auto approx = PredictApprox(approximator, points);
  std::vector<SurfacePoint> out(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    out[i] = SurfacePoint{points(i, 0), points(i, 1), source[i], approx[i]};
  }
  return out;
}

}  // namespace odaccel
