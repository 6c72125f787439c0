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

// Random regression forest (CART trees, variance-reduction splits). Used as
// the running-time forecaster and as the student model that replaces costly
// detectors at prediction time.

#ifndef ODACCEL_FOREST_H_
#define ODACCEL_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "odaccel/array_store.h"
#include "odaccel/data.h"

namespace odaccel {

struct ForestParams {
  std::size_t n_trees = 100;
  std::optional<std::size_t> max_depth;
  std::size_t min_samples_leaf = 2;
  // Candidate features per split; max(1, floor(d / 3)) when unset.
  std::optional<std::size_t> mtry;
  std::uint64_t seed = 0;
  bool bootstrap = true;
};

struct RegressionTree {
  // Parallel node arrays; feature < 0 marks a leaf whose prediction is value.
  std::vector<int> feature;
  std::vector<double> threshold;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<double> value;

  double Predict(std::span<const double> x) const;
};

class Forest {
 public:
  Forest(std::vector<RegressionTree> trees, ForestParams params,
         std::size_t input_dim, std::vector<double> feature_importance);

  const std::vector<RegressionTree>& trees() const { return trees_; }
  const ForestParams& params() const { return params_; }
  std::size_t input_dim() const { return input_dim_; }
  // Normalized total variance reduction per feature; all zero if no tree
  // ever split.
  const std::vector<double>& feature_importance() const {
    return feature_importance_;
  }

  double PredictRow(std::span<const double> x) const;
  // Mean of per-tree predictions. Throws DataError on dimension mismatch.
  std::vector<double> Predict(const DataMatrix& x) const;

  // Flat arrays for bundle persistence (node arrays concatenated across
  // trees, children as tree-local indices).
  ArrayMap Export() const;
  static Forest Import(const ArrayMap& arrays);

 private:
  std::vector<RegressionTree> trees_;
  ForestParams params_;
  std::size_t input_dim_;
  std::vector<double> feature_importance_;
};

// Throws std::invalid_argument on fewer than 2 rows, length mismatch, bad
// params, or non-finite targets.
Forest FitForest(const DataMatrix& x, std::span<const double> y,
                 const ForestParams& params);

}  // namespace odaccel

#endif  // ODACCEL_FOREST_H_
