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

#include "odaccel/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>

#include "odaccel/approx.h"
#include "odaccel/data.h"
#include "odaccel/error.h"
#include "odaccel/metrics.h"
#include "odaccel/projection.h"
#include "odaccel/random.h"

namespace odaccel {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<DetectorSpec> SpecsFor(std::initializer_list<DetectorAlgo> algos) {
  std::vector<DetectorSpec> out;
  for (DetectorAlgo algo : algos) out.push_back(DetectorSpec{algo, {}, 0});
  return out;
}

struct Prepared {
  DataMatrix train;
  DataMatrix test;
};

Prepared Prepare(const DataMatrix& data, const BenchOptions& options,
                 std::uint64_t seed) {
  SplitPair split = TrainTestSplit(data, options.train_fraction, seed);
  if (!options.standardize) {
    return Prepared{std::move(split.train), std::move(split.test)};
  }
  Standardized s = Standardize(split.train);
  DataMatrix test = s.stats.Apply(split.test);
  return Prepared{std::move(s.data), std::move(test)};
}

// Running means of one results row across trials.
struct Accumulator {
  double roc = 0.0;
  double p_at_n = 0.0;
  double fit = 0.0;
  double predict = 0.0;
  std::size_t count = 0;

  void Add(const DataMatrix& test, const std::vector<double>& scores,
           double fit_seconds, double predict_seconds) {
    const EvalResult r = Evaluate(*test.labels(), scores);
    roc += r.roc_auc;
    p_at_n += r.p_at_n;
    fit += fit_seconds;
    predict += predict_seconds;
    ++count;
  }
  BenchRow Row(std::string dataset, std::string detector,
               std::string variant) const {
    const double c = static_cast<double>(count);
    return BenchRow{std::move(dataset), std::move(detector), std::move(variant),
                    roc / c, p_at_n / c, fit / c, predict / c};
  }
};

void ProjectionSweep(const NamedDataset& ds, const BenchOptions& options,
                     std::vector<BenchRow>& rows) {
  const auto& specs = options.projection_detectors.empty()
                          ? SpecsFor({DetectorAlgo::kKnn, DetectorAlgo::kLof,
                                      DetectorAlgo::kFastAbod})
                          : options.projection_detectors;
  const std::vector<ProjectionMethod> methods = {
      ProjectionMethod::kNone,      ProjectionMethod::kPca,
      ProjectionMethod::kRandomSelection, ProjectionMethod::kBasic,
      ProjectionMethod::kDiscrete,  ProjectionMethod::kCirculant,
      ProjectionMethod::kToeplitz};
  const std::size_t d = ds.data.cols();
  const std::size_t k = (d + 1) / 2;
  for (const DetectorSpec& spec : specs) {
    std::vector<Accumulator> acc(methods.size());
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      const std::uint64_t seed = DeriveSeed(options.seed, trial);
      const Prepared p = Prepare(ds.data, options, seed);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        auto start = Clock::now();
        const ProjectionPlan plan =
            methods[m] == ProjectionMethod::kNone
                ? IdentityPlan(d)
                : BuildPlan(methods[m], p.train, k, seed);
        DetectorSpec seeded = spec;
        seeded.seed = seed;
        const FittedDetector det = FitDetector(seeded, plan.Apply(p.train), plan);
        const double fit_seconds = SecondsSince(start);
        start = Clock::now();
        const auto scores = det.Score(p.test);
        acc[m].Add(p.test, scores, fit_seconds, SecondsSince(start));
      }
    }
    for (std::size_t m = 0; m < methods.size(); ++m) {
      rows.push_back(acc[m].Row(ds.name, std::string(DetectorAlgoName(spec.algo)),
                                std::string(ProjectionMethodName(methods[m]))));
    }
  }
}

void ApproximationSweep(const NamedDataset& ds, const BenchOptions& options,
                        std::vector<BenchRow>& rows) {
  const auto& specs =
      options.approximation_detectors.empty()
          ? SpecsFor({DetectorAlgo::kKnn, DetectorAlgo::kAknn,
                      DetectorAlgo::kLof, DetectorAlgo::kFastAbod})
          : options.approximation_detectors;
  for (const DetectorSpec& spec : specs) {
    Accumulator orig;
    Accumulator appr;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      const std::uint64_t seed = DeriveSeed(options.seed, trial);
      const Prepared p = Prepare(ds.data, options, seed);
      DetectorSpec seeded = spec;
      seeded.seed = seed;
      const ProjectionPlan plan = IdentityPlan(p.train.cols());

      auto start = Clock::now();
      const FittedDetector det = FitDetector(seeded, p.train, plan);
      const double fit_seconds = SecondsSince(start);
      start = Clock::now();
      const auto native = det.Score(p.test);
      orig.Add(p.test, native, fit_seconds, SecondsSince(start));

      ForestParams forest = options.forest;
      forest.seed = seed;
      start = Clock::now();
      const Approximator approx = Approximate(det, p.train, forest);
      const double distill_seconds = SecondsSince(start);
      start = Clock::now();
      const auto predicted = PredictApprox(approx, p.test);
      appr.Add(p.test, predicted, distill_seconds, SecondsSince(start));
    }
    const std::string name(DetectorAlgoName(spec.algo));
    rows.push_back(orig.Row(ds.name, name, "orig"));
    rows.push_back(appr.Row(ds.name, name, "appr"));
  }
}

double TimeEnsemble(const PipelineConfig& config, const DataMatrix& train,
                    const BenchOptions& options) {
  RunOptions run{options.cost_model, nullptr};
  const auto start = Clock::now();
  const Ensemble e = FitEnsemble(config, train, run);
  const double seconds = SecondsSince(start);
  if (e.failed_count() > 0) {
    throw std::runtime_error(std::to_string(e.failed_count()) +
                             " detectors failed during the scheduler sweep");
  }
  return seconds;
}

void SchedulerSweep(const NamedDataset& ds, const BenchOptions& options,
                    std::vector<BenchRow>& rows,
                    std::vector<SchedulerRow>& summary) {
  const auto& algos = AllDetectorAlgos();
  const Prepared p = Prepare(ds.data, options, DeriveSeed(options.seed, 0));
  for (std::size_t m : options.sweep_tasks) {
    PipelineConfig config;
    config.master_seed = options.seed;
    config.standardize = false;  // Prepare already did
    for (std::size_t i = 0; i < m; ++i) {
      config.detectors.push_back(
          DetectorEntry{DetectorSpec{algos[i % algos.size()], {}, options.seed + i},
                        std::nullopt});
    }
    for (std::size_t t : options.sweep_workers) {
      config.scheduler.workers = t;
      config.scheduler.policy = SchedulerPolicy::kSimple;
      const double simple = TimeEnsemble(config, p.train, options);
      config.scheduler.policy = SchedulerPolicy::kBalanced;
      const double bps = TimeEnsemble(config, p.train, options);
      const std::string label =
          "m" + std::to_string(m) + "_t" + std::to_string(t);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rows.push_back(BenchRow{ds.name, label, "simple", nan, nan, simple, 0.0});
      rows.push_back(BenchRow{ds.name, label, "bps", nan, nan, bps, 0.0});
      summary.push_back(SchedulerRow{ds.name, m, t, simple, bps,
                                     100.0 * (simple - bps) / simple});
    }
  }
}

void Note(const BenchOptions& options, BenchReport& report,
          const std::string& message) {
  report.skipped.push_back(message);
  if (options.log) options.log(message);
}

}  // namespace

BenchReport RunBench(const std::vector<NamedDataset>& datasets,
                     const BenchOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  BenchReport report;
  for (const NamedDataset& ds : datasets) {
    if (!ds.data.has_labels()) {
      Note(options, report, ds.name + ": no labels, skipped");
      continue;
    }
    const auto run = [&](const char* what, auto&& body) {
      try {
        body();
      } catch (const std::exception& e) {
        Note(options, report,
             ds.name + ": " + what + " skipped: " + e.what());
      }
    };
    if (options.run_projection) {
      run("projection sweep", [&] { ProjectionSweep(ds, options, report.rows); });
    }
    if (options.run_scheduler) {
      if (!options.cost_model) {
        Note(options, report,
             ds.name + ": scheduler sweep skipped: no cost model");
      } else {
        run("scheduler sweep", [&] {
          SchedulerSweep(ds, options, report.rows, report.scheduler);
        });
      }
    }
    if (options.run_approximation) {
      run("approximation sweep",
          [&] { ApproximationSweep(ds, options, report.rows); });
    }
  }
  return report;
}

std::vector<NamedDataset> LoadDatasetDir(const std::string& dir,
                                         const std::string& label_column) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("'" + dir + "' is not a directory");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<NamedDataset> out;
  for (const fs::path& path : paths) {
    out.push_back(
        NamedDataset{path.stem().string(), LoadCsv(path.string(), label_column)});
  }
  return out;
}

namespace {

std::ofstream OpenCsv(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

}  // namespace

void WriteBenchCsv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out = OpenCsv(path);
  out << "dataset,detector,variant,roc,p_at_n,fit_seconds,predict_seconds\n";
  for (const BenchRow& r : rows) {
    out << r.dataset << ',' << r.detector << ',' << r.variant << ',' << r.roc
        << ',' << r.p_at_n << ',' << r.fit_seconds << ',' << r.predict_seconds
        << '\n';
  }
}

void WriteSchedulerCsv(const std::vector<SchedulerRow>& rows,
                       const std::string& path) {
  std::ofstream out = OpenCsv(path);
  out << "dataset,m,t,simple_seconds,bps_seconds,reduction_percent\n";
  for (const SchedulerRow& r : rows) {
    out << r.dataset << ',' << r.tasks << ',' << r.workers << ','
        << r.simple_seconds << ',' << r.bps_seconds << ','
        << r.reduction_percent << '\n';
  }
}

}  // namespace odaccel
