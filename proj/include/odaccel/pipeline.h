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

// End-to-end ensemble training and prediction: per-detector projection,
// cost-ranked parallel fitting, optional distillation into forests, and
// model-bundle persistence.

#ifndef ODACCEL_PIPELINE_H_
#define ODACCEL_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "odaccel/approx.h"
#include "odaccel/costmodel.h"
#include "odaccel/data.h"
#include "odaccel/detectors.h"
#include "odaccel/forest.h"
#include "odaccel/projection.h"
#include "odaccel/scheduler.h"

namespace odaccel {

inline constexpr const char* kToolVersion = "0.1.0";

struct DetectorEntry {
  DetectorSpec spec;
  // Explicit approximate/keep-native choice; ShouldApproximate decides when
  // unset.
  std::optional<bool> approximate;
};

struct ProjectionConfig {
  ProjectionMethod method = ProjectionMethod::kToeplitz;
  std::size_t threshold = kDefaultProjectionThreshold;
  // Overrides the ceil(d/2) rule when projection is enabled.
  std::optional<std::size_t> target_dim;
};

struct SchedulerConfig {
  SchedulerPolicy policy = SchedulerPolicy::kBalanced;
  std::optional<std::size_t> workers;
  std::optional<std::string> cost_model_path;
};

struct ApproximationConfig {
  bool enabled = false;
  ForestParams forest;
};

// JSON schema (every key optional except "detectors"):
//
//   {
//     "detectors": [{"algo": "lof", "params": {"n_neighbors": 10},
//                    "seed": 7, "approximate": true, "repeat": 1}],
//     "projection": {"method": "toeplitz", "threshold": 20, "k": null},
//     "scheduler": {"policy": "bps", "workers": null, "cost_model": null},
//     "approximation": {"enabled": false,
//                       "forest": {"n_trees": 100, "max_depth": null,
//                                  "min_samples_leaf": 2, "mtry": null,
//                                  "bootstrap": true}},
//     "master_seed": 0,
//     "standardize": true
//   }
//
// "repeat" expands an entry into that many copies. Detectors without an
// explicit seed get master_seed + index.
struct PipelineConfig {
  std::vector<DetectorEntry> detectors;
  ProjectionConfig projection;
  SchedulerConfig scheduler;
  ApproximationConfig approximation;
  std::uint64_t master_seed = 0;
  bool standardize = true;

  // Throws ConfigError.
  void Validate() const;
  nlohmann::json ToJson() const;
  // Throws ConfigError on unknown keys or bad values.
  static PipelineConfig FromJson(const nlohmann::json& json);
};

PipelineConfig LoadConfig(const std::string& path);

// Seeds for member `index` of an ensemble.
std::uint64_t ProjectionSeed(std::uint64_t master_seed, std::size_t index);
std::uint64_t ApproximatorSeed(std::uint64_t master_seed, std::size_t index);

struct EnsembleMember {
  DetectorEntry entry;
  std::optional<FittedDetector> detector;  // empty when fitting failed
  std::optional<Approximator> approximator;
  std::string error;
};

struct Ensemble {
  PipelineConfig config;
  std::optional<FeatureStats> stats;
  // Training rows after standardization, kept so approximators can be built
  // at prediction time.
  std::shared_ptr<const DataMatrix> train;
  std::vector<EnsembleMember> members;

  std::size_t failed_count() const;
};

using LogFn = std::function<void(const std::string&)>;

struct RunOptions {
  // Used when the config names no cost model; may be null.
  std::shared_ptr<const CostModel> cost_model;
  LogFn log;
};

// Standardizes (when configured), projects and fits every detector through
// the configured scheduler, then distills approximators when enabled. Per-
// detector failures are recorded on the member and do not stop the run.
Ensemble FitEnsemble(const PipelineConfig& config, const DataMatrix& train_raw,
                     const RunOptions& options = {});

struct Predictions {
  std::vector<std::string> columns;
  // columns.size() vectors of test-row length; empty for failed detectors.
  std::vector<std::vector<double>> scores;
  std::vector<bool> approximated;
  std::vector<TaskFailure> failures;
};

// Scores raw test rows with every fitted detector. With use_approx, members
// that ShouldApproximate are scored by their approximator, which is fitted
// and stored on the ensemble if missing. Throws DataError on width mismatch.
Predictions PredictEnsemble(Ensemble& ensemble, const DataMatrix& test_raw,
                            bool use_approx, const RunOptions& options = {});

void SaveEnsemble(const Ensemble& ensemble, const std::string& dir);
Ensemble LoadEnsemble(const std::string& dir);

// Writes "row" plus one column per detector; failed detectors emit "nan".
void WritePredictionsCsv(const Predictions& predictions,
                         const std::string& path);

// Loads the configured cost model, falling back to the bundled default.
// Returns null when neither is readable.
std::shared_ptr<const CostModel> ResolveCostModel(
    const std::optional<std::string>& path, const LogFn& log = nullptr);

}  // namespace odaccel

#endif  // ODACCEL_PIPELINE_H_
