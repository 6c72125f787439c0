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

// Pseudo-supervised approximation. A fitted detector's own training scores
// serve as regression targets for a forest trained on the ORIGINAL feature
// space; the forest then scores unseen points in place of the detector.
// Proximity-based detectors cost O(n d) per prediction, the forest O(d p).

#ifndef ODACCEL_APPROX_H_
#define ODACCEL_APPROX_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "odaccel/data.h"
#include "odaccel/detectors.h"
#include "odaccel/forest.h"

namespace odaccel {

struct Approximator {
  DetectorSpec source_spec;
  ProjectionPlan source_plan;
  Forest forest;
  bool trained_on_original_space = true;
};

// The detector's training scores, unchanged.
std::vector<double> PseudoTargets(const FittedDetector& detector);

// Throws DataError when x_original's row count differs from the training
// scores or its width differs from the detector's original dimension.
Approximator Approximate(const FittedDetector& detector,
                         const DataMatrix& x_original,
                         const ForestParams& params);

// Forest predictions on un-projected rows. Throws DataError on width mismatch.
std::vector<double> PredictApprox(const Approximator& approximator,
                                  const DataMatrix& x_test);

// True for knn, aknn, lof, fastabod, featurebagging; false for hbos and
// iforest. An explicit override wins.
bool ShouldApproximate(const DetectorSpec& spec,
                       std::optional<bool> override_flag = std::nullopt);

struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  double source_score = 0.0;
  double approx_score = 0.0;
};

// Evaluates detector and approximator on a resolution x resolution grid
// spanning the data's bounding box padded by `padding` of its extent. Only
// 2-feature data is accepted.
std::vector<SurfacePoint> DecisionSurface(const FittedDetector& detector,
                                          const Approximator& approximator,
                                          const DataMatrix& data,
                                          std::size_t resolution,
                                          double padding = 0.1);

}  // namespace odaccel

#endif  // ODACCEL_APPROX_H_
