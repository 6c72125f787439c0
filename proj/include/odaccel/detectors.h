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

// Unsupervised outlier detectors with a uniform fit/score contract. Every
// score has the same polarity: higher means more outlying.
//
// Neighbor-based detectors exclude each training point from its own
// neighborhood at fit time. At score time every stored training point is an
// eligible neighbor, including an exact copy of the query, so scoring the
// training matrix again does not reproduce train_scores.

#ifndef ODACCEL_DETECTORS_H_
#define ODACCEL_DETECTORS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odaccel/array_store.h"
#include "odaccel/data.h"
#include "odaccel/projection.h"

namespace odaccel {

enum class DetectorAlgo {
  kKnn,
  kAknn,
  kLof,
  kFastAbod,
  kHbos,
  kIForest,
  kFeatureBagging,
};

std::string_view DetectorAlgoName(DetectorAlgo algo);
// Accepts knn, aknn, lof, fastabod, hbos, iforest, featurebagging.
DetectorAlgo ParseDetectorAlgo(std::string_view name);
const std::vector<DetectorAlgo>& AllDetectorAlgos();

struct DetectorParams {
  std::size_t n_neighbors = 10;
  std::optional<std::size_t> n_bins;  // hbos; ceil(sqrt(n)) when unset
  std::size_t n_trees = 100;          // iforest
  std::size_t max_samples = 256;      // iforest subsample size
  std::size_t n_sub_detectors = 10;   // featurebagging
};

struct DetectorSpec {
  DetectorAlgo algo = DetectorAlgo::kKnn;
  DetectorParams params;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument for out-of-range parameters.
  void Validate() const;
  // Canonical "key=value;..." rendering of the parameters this algorithm
  // reads, used to key timing records.
  std::string ParamsDigest() const;
};

// Fitted model state in the (possibly projected) space it was trained on.
class DetectorModel {
 public:
  virtual ~DetectorModel() = default;
  // Scores rows already mapped into the model's space.
  virtual std::vector<double> Score(const DataMatrix& projected) const = 0;
  virtual ArrayMap ExportState() const = 0;
};

// Immutable once built; copies share the model.
class FittedDetector {
 public:
  FittedDetector(DetectorSpec spec, ProjectionPlan plan,
                 std::shared_ptr<const DetectorModel> model,
                 std::vector<double> train_scores);

  const DetectorSpec& spec() const { return spec_; }
  const ProjectionPlan& plan() const { return plan_; }
  const DetectorModel& model() const { return *model_; }
  const std::vector<double>& train_scores() const { return train_scores_; }

  // Projects rows in the original feature space, then scores them.
  std::vector<double> Score(const DataMatrix& original) const;

 private:
  DetectorSpec spec_;
  ProjectionPlan plan_;
  std::shared_ptr<const DetectorModel> model_;
  std::vector<double> train_scores_;
};

// Fits on `projected`, which must already be plan.Apply(X). Throws
// std::invalid_argument when the neighborhood does not fit (n <= k) or
// DataError when projected.cols() != plan.target_dim().
FittedDetector FitDetector(const DetectorSpec& spec,
                           const DataMatrix& projected,
                           const ProjectionPlan& plan);

// Rebuilds a fitted detector from exported state.
FittedDetector RestoreDetector(const DetectorSpec& spec, ProjectionPlan plan,
                               const ArrayMap& state,
                               std::vector<double> train_scores);

// Average path length of an unsuccessful BST search over n keys.
double AveragePathLength(std::size_t n);

}  // namespace odaccel

#endif  // ODACCEL_DETECTORS_H_
