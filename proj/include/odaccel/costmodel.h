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

// Fit-time forecasting for scheduling. A regression forest maps
// (n, d, one-hot algorithm) to the summed running time of repeated fits; the
// scheduler only consumes the induced rank order, which transfers between
// machines even when absolute seconds do not.

#ifndef ODACCEL_COSTMODEL_H_
#define ODACCEL_COSTMODEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odaccel/data.h"
#include "odaccel/detectors.h"
#include "odaccel/forest.h"

namespace odaccel {

struct CostRecord {
  std::size_t n = 0;
  std::size_t d = 0;
  DetectorAlgo algo = DetectorAlgo::kKnn;
  std::string params_digest;
  double time_sum = 0.0;  // seconds summed over all timed repeats
};

enum class TargetTransform { kRaw, kLog10 };

std::string_view TargetTransformName(TargetTransform transform);
TargetTransform ParseTargetTransform(std::string_view name);

// [n, d, onehot(algo)]. Throws std::invalid_argument if algo is not in the
// vocabulary.
std::vector<double> Featurize(std::size_t n, std::size_t d, DetectorAlgo algo,
                              std::span<const DetectorAlgo> vocabulary);

class CostModel {
 public:
  CostModel(Forest forest, std::vector<DetectorAlgo> vocabulary,
            TargetTransform transform);

  const Forest& forest() const { return forest_; }
  const std::vector<DetectorAlgo>& vocabulary() const { return vocabulary_; }
  TargetTransform transform() const { return transform_; }
  bool Knows(DetectorAlgo algo) const;

  // Forecast seconds, inverse-transformed and floored at a tiny positive
  // value so the result is always finite and positive.
  double PredictSeconds(std::size_t n, std::size_t d, DetectorAlgo algo) const;

 private:
  Forest forest_;
  std::vector<DetectorAlgo> vocabulary_;
  TargetTransform transform_;
};

struct PendingTask {
  DetectorAlgo algo = DetectorAlgo::kKnn;
  std::size_t n = 0;
  std::size_t d = 0;
};

// Ranks in 1..m by ascending value; equal values keep list order.
std::vector<std::size_t> RanksFromForecasts(std::span<const double> forecasts);

std::vector<std::size_t> ForecastRanks(const CostModel& model,
                                       std::span<const PendingTask> pending);

struct NamedDataset {
  std::string name;
  DataMatrix data;
};

struct CorpusShape {
  std::size_t n = 0;
  std::size_t d = 0;
};

// Ten shapes spanning n in [500, 8000] and d in [5, 100]; large n is paired
// with small d so a full collection stays within minutes.
std::vector<CorpusShape> DefaultCorpusShapes();

// One SynthBlob dataset (10% outliers) per shape, named "synth_n<n>_d<d>",
// seeded DeriveSeed(seed, index).
std::vector<NamedDataset> SyntheticCorpus(std::span<const CorpusShape> shapes,
                                          std::uint64_t seed);

struct SkippedTiming {
  std::size_t spec_index = 0;
  std::size_t dataset_index = 0;
  std::string reason;
};

struct TimingCollection {
  std::vector<CostRecord> records;
  std::vector<SkippedTiming> skipped;
};

// One record per (spec, dataset) pair in spec-major order. Each pair gets one
// untimed warm-up fit followed by `repeats` timed fits on the original space.
// Single-threaded by construction. A failing fit is skipped, not fatal.
TimingCollection CollectTimings(
    std::span<const DetectorSpec> specs, std::span<const NamedDataset> datasets,
    std::size_t repeats,
    const std::function<void(const std::string&)>& log = nullptr);

struct FoldReport {
  std::size_t size = 0;
  std::optional<double> r2;        // on the transformed target
  std::optional<double> spearman;  // undefined when a side is constant
};

struct CrossValidationReport {
  std::vector<FoldReport> folds;
  // Spearman over the pooled out-of-fold predictions of every record.
  double pooled_spearman = 0.0;
  std::optional<double> mean_fold_spearman;
  std::vector<std::string> warnings;
};

struct TrainedCostModel {
  CostModel model;
  CrossValidationReport report;
};

// Fits on every record and cross-validates with `folds` seeded folds.
// Throws std::invalid_argument for fewer than 20 records; a single-algorithm
// corpus is accepted with a warning.
TrainedCostModel TrainCostModel(std::span<const CostRecord> records,
                                const ForestParams& params,
                                TargetTransform transform = TargetTransform::kLog10,
                                std::size_t folds = 10);

// Fold assignment used by TrainCostModel: a seeded shuffle dealt round-robin.
std::vector<std::vector<std::size_t>> MakeFolds(std::size_t count,
                                                std::size_t folds,
                                                std::uint64_t seed);

// CSV with header n,d,algo,params_digest,time_sum_10.
void WriteCostRecords(const std::string& path,
                      std::span<const CostRecord> records);
std::vector<CostRecord> ReadCostRecords(const std::string& path);

// Directory bundle: manifest.json plus float64 arrays.
void SaveCostModel(const CostModel& model, const std::string& dir);
CostModel LoadCostModel(const std::string& dir);

}  // namespace odaccel

#endif  // ODACCEL_COSTMODEL_H_
