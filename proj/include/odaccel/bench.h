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

// Benchmark driver behind the `bench` subcommand. Three experiment shapes
// share one tidy results table: a projection-method sweep, a scheduler
// timing sweep, and approximation fidelity.

#ifndef ODACCEL_BENCH_H_
#define ODACCEL_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "odaccel/costmodel.h"
#include "odaccel/detectors.h"
#include "odaccel/forest.h"
#include "odaccel/pipeline.h"

namespace odaccel {

struct BenchOptions {
  bool run_projection = true;
  bool run_scheduler = true;
  bool run_approximation = true;

  std::vector<DetectorSpec> projection_detectors;     // default knn, lof, fastabod
  std::vector<DetectorSpec> approximation_detectors;  // default knn, aknn, lof, fastabod
  std::vector<std::size_t> sweep_tasks = {100, 500};
  std::vector<std::size_t> sweep_workers = {2, 4, 6};
  std::size_t trials = 10;
  double train_fraction = 0.6;
  bool standardize = true;
  ForestParams forest;
  std::uint64_t seed = 0;
  std::shared_ptr<const CostModel> cost_model;  // required by the scheduler sweep
  LogFn log;
};

// One row of the results CSV. Scheduler-sweep rows carry NaN metrics.
struct BenchRow {
  std::string dataset;
  std::string detector;
  std::string variant;
  double roc = 0.0;
  double p_at_n = 0.0;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
};

struct SchedulerRow {
  std::string dataset;
  std::size_t tasks = 0;
  std::size_t workers = 0;
  double simple_seconds = 0.0;
  double bps_seconds = 0.0;
  double reduction_percent = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<SchedulerRow> scheduler;
  std::vector<std::string> skipped;
};

// Labeled datasets only; unlabeled ones are skipped with a logged reason, as
// are datasets on which an experiment throws. Metrics are means over
// `trials` splits seeded DeriveSeed(seed, trial).
BenchReport RunBench(const std::vector<NamedDataset>& datasets,
                     const BenchOptions& options);

// Every *.csv in `dir`, sorted by file name, loaded with `label_column`.
std::vector<NamedDataset> LoadDatasetDir(const std::string& dir,
                                         const std::string& label_column);

// Header: dataset,detector,variant,roc,p_at_n,fit_seconds,predict_seconds.
void WriteBenchCsv(const std::vector<BenchRow>& rows, const std::string& path);
// Header: dataset,m,t,simple_seconds,bps_seconds,reduction_percent.
void WriteSchedulerCsv(const std::vector<SchedulerRow>& rows,
                       const std::string& path);

}  // namespace odaccel

#endif  // ODACCEL_BENCH_H_
