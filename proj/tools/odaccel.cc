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

// odaccel command-line tool.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 partial failure (some detectors failed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "odaccel/approx.h"
#include "odaccel/bench.h"
#include "odaccel/costmodel.h"
#include "odaccel/data.h"
#include "odaccel/detectors.h"
#include "odaccel/error.h"
#include "odaccel/metrics.h"
#include "odaccel/pipeline.h"
#include "odaccel/scheduler.h"

namespace {

using nlohmann::json;
using namespace odaccel;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

struct Globals {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> label_col;
  std::optional<std::string> scheduler;
  std::optional<std::string> projection;
  std::optional<std::size_t> proj_threshold;
  std::optional<std::size_t> proj_dim;
  std::optional<std::string> cost_model;
  bool approx = false;
  bool quiet = false;
};

LogFn MakeLogger(const Globals& g) {
  if (g.quiet) return nullptr;
  return [](const std::string& line) { std::cerr << "odaccel: " << line << '\n'; };
}

// Applies the flag overrides on the raw JSON so that detector seeds derived
// from master_seed follow a --seed override.
PipelineConfig BuildConfig(const Globals& g) {
  json j;
  if (g.config) {
    std::ifstream in(*g.config);
    if (!in) throw ConfigError("cannot open config '" + *g.config + "'");
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("config '" + *g.config + "' is not valid JSON: " +
                        e.what());
    }
  } else {
    j["detectors"] = json::array();
    for (DetectorAlgo algo : AllDetectorAlgos()) {
      j["detectors"].push_back({{"algo", DetectorAlgoName(algo)}});
    }
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (g.seed) j["master_seed"] = *g.seed;
  if (g.workers) j["scheduler"]["workers"] = *g.workers;
  if (g.scheduler) j["scheduler"]["policy"] = *g.scheduler;
  if (g.cost_model) j["scheduler"]["cost_model"] = *g.cost_model;
  if (g.projection) j["projection"]["method"] = *g.projection;
  if (g.proj_threshold) j["projection"]["threshold"] = *g.proj_threshold;
  if (g.proj_dim) j["projection"]["k"] = *g.proj_dim;
  if (g.approx) j["approximation"]["enabled"] = true;
  return PipelineConfig::FromJson(j);
}

RunOptions MakeRunOptions(const PipelineConfig& config, const Globals& g) {
  RunOptions options;
  options.log = MakeLogger(g);
  if (config.scheduler.policy == SchedulerPolicy::kBalanced &&
      !config.scheduler.cost_model_path) {
    options.cost_model = ResolveCostModel(std::nullopt, options.log);
  }
  return options;
}

void PrintFailures(const std::vector<TaskFailure>& failures) {
  for (const TaskFailure& f : failures) {
    std::cerr << "odaccel: detector " << f.index << " failed: " << f.reason
              << '\n';
  }
}

int RunFit(const Globals& g, const std::string& data_path,
           const std::string& out_dir) {
  const PipelineConfig config = BuildConfig(g);
  const DataMatrix train = LoadCsv(data_path, g.label_col);
  const Ensemble ensemble = FitEnsemble(config, train, MakeRunOptions(config, g));
  SaveEnsemble(ensemble, out_dir);
  const std::size_t failed = ensemble.failed_count();
  if (!g.quiet) {
    std::cerr << "odaccel: fitted " << ensemble.members.size() - failed << "/"
              << ensemble.members.size() << " detectors into " << out_dir
              << '\n';
  }
  return failed > 0 ? kExitPartial : kExitOk;
}

int RunPredict(const Globals& g, const std::string& bundle,
               const std::string& data_path, const std::string& out_path) {
  Ensemble ensemble = LoadEnsemble(bundle);
  if (g.workers) ensemble.config.scheduler.workers = *g.workers;
  if (g.scheduler) {
    ensemble.config.scheduler.policy = ParseSchedulerPolicy(*g.scheduler);
  }
  if (g.cost_model) ensemble.config.scheduler.cost_model_path = *g.cost_model;
  const DataMatrix test = LoadCsv(data_path, g.label_col);
  const Predictions predictions = PredictEnsemble(
      ensemble, test, g.approx, MakeRunOptions(ensemble.config, g));
  WritePredictionsCsv(predictions, out_path);
  PrintFailures(predictions.failures);
  if (test.has_labels()) {
    std::cout << "column,roc,p_at_n\n" << std::setprecision(6);
    for (std::size_t i = 0; i < predictions.columns.size(); ++i) {
      if (predictions.scores[i].empty()) continue;
      const EvalResult r = Evaluate(*test.labels(), predictions.scores[i]);
      std::cout << predictions.columns[i] << ',' << r.roc_auc << ','
                << r.p_at_n << '\n';
    }
  }
  return predictions.failures.empty() && ensemble.failed_count() == 0
             ? kExitOk
             : kExitPartial;
}

struct BenchArgs {
  std::string datasets;
  std::string out;
  std::optional<std::string> scheduler_out;
  std::size_t trials = 10;
  std::vector<std::size_t> tasks = {100, 500};
  std::vector<std::size_t> worker_list = {2, 4, 6};
  std::vector<std::string> only;
};

int RunBenchCommand(const Globals& g, const BenchArgs& args) {
  BenchOptions options;
  options.trials = args.trials;
  options.sweep_tasks = args.tasks;
  options.sweep_workers = args.worker_list;
  options.seed = g.seed.value_or(0);
  options.log = MakeLogger(g);
  if (g.config) {
    const PipelineConfig config = BuildConfig(g);
    options.forest = config.approximation.forest;
    options.standardize = config.standardize;
    for (const DetectorEntry& entry : config.detectors) {
      options.projection_detectors.push_back(entry.spec);
      options.approximation_detectors.push_back(entry.spec);
    }
  }
  if (!args.only.empty()) {
    const auto wants = [&](const std::string& name) {
      return std::find(args.only.begin(), args.only.end(), name) !=
             args.only.end();
    };
    options.run_projection = wants("projection");
    options.run_scheduler = wants("scheduler");
    options.run_approximation = wants("approximation");
  }
  if (options.run_scheduler) {
    options.cost_model = ResolveCostModel(g.cost_model, options.log);
  }
  const auto datasets =
      LoadDatasetDir(args.datasets, g.label_col.value_or("label"));
  const BenchReport report = RunBench(datasets, options);
  WriteBenchCsv(report.rows, args.out);
  if (!report.scheduler.empty()) {
    std::string path = args.scheduler_out.value_or("");
    if (path.empty()) {
      const auto dot = args.out.rfind(".csv");
      path = (dot == std::string::npos ? args.out : args.out.substr(0, dot)) +
             "_scheduler.csv";
    }
    WriteSchedulerCsv(report.scheduler, path);
  }
  return report.skipped.empty() ? kExitOk : kExitPartial;
}

std::vector<std::size_t> ReadRanks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ranks file '" + path + "'");
  std::vector<std::size_t> ranks;
  std::string token;
  while (in >> token) {
    for (char& c : token) c = (c == ',') ? ' ' : c;
    std::istringstream parts(token);
    long long value = 0;
    while (parts >> value) {
      if (value < 1) throw DataError("ranks must be positive integers");
      ranks.push_back(static_cast<std::size_t>(value));
    }
    if (!parts.eof()) throw DataError("ranks file holds a non-integer token");
  }
  return ranks;
}

int RunPlan(const Globals& g, std::size_t m, std::optional<std::size_t> t,
            const std::optional<std::string>& ranks_path) {
  const std::size_t workers = t.value_or(g.workers.value_or(DefaultWorkerCount(m)));
  const SchedulerPolicy policy =
      ParseSchedulerPolicy(g.scheduler.value_or("bps"));
  std::vector<std::size_t> ranks;
  if (ranks_path) {
    ranks = ReadRanks(*ranks_path);
    if (ranks.size() != m) {
      throw DataError("ranks file lists " + std::to_string(ranks.size()) +
                      " ranks, expected " + std::to_string(m));
    }
  } else {
    for (std::size_t i = 1; i <= m; ++i) ranks.push_back(i);
  }
  const SchedulePlan plan = policy == SchedulerPolicy::kBalanced
                                ? PlanBalanced(ranks, workers)
                                : PlanSimple(m, workers);
  json out;
  out["policy"] = SchedulerPolicyName(policy);
  out["tasks"] = m;
  out["workers"] = workers;
  out["assignments"] = plan.assignments;
  out["rank_sums"] = plan.RankSums();
  out["target_rank_sum"] =
      static_cast<double>(m * m + m) / (2.0 * static_cast<double>(workers));
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

struct CollectArgs {
  std::optional<std::string> datasets;
  bool synthetic = false;
  std::string out;
  std::size_t repeats = 10;
  std::vector<std::string> algos;
};

int RunCostCollect(const Globals& g, const CollectArgs& args) {
  if (args.datasets.has_value() == args.synthetic) {
    throw ConfigError("give exactly one of --datasets or --synthetic");
  }
  std::vector<DetectorSpec> specs;
  if (args.algos.empty()) {
    for (DetectorAlgo algo : AllDetectorAlgos()) specs.push_back({algo, {}, 0});
  } else {
    for (const std::string& name : args.algos) {
      specs.push_back({ParseDetectorAlgo(name), {}, 0});
    }
  }
  const std::uint64_t seed = g.seed.value_or(0);
  for (std::size_t i = 0; i < specs.size(); ++i) specs[i].seed = seed + i;
  std::vector<NamedDataset> datasets;
  if (args.synthetic) {
    datasets = SyntheticCorpus(DefaultCorpusShapes(), seed);
  } else {
    datasets = LoadDatasetDir(*args.datasets, g.label_col.value_or("label"));
  }
  const LogFn log = MakeLogger(g);
  const TimingCollection timings =
      CollectTimings(specs, datasets, args.repeats, log);
  WriteCostRecords(args.out, timings.records);
  return timings.skipped.empty() ? kExitOk : kExitPartial;
}

struct TrainArgs {
  std::string records;
  std::string out;
  std::string transform = "log10";
  std::size_t folds = 10;
  std::size_t trees = 100;
};

int RunCostTrain(const Globals& g, const TrainArgs& args) {
  const auto records = ReadCostRecords(args.records);
  ForestParams params;
  params.n_trees = args.trees;
  params.seed = g.seed.value_or(0);
  const TrainedCostModel trained = TrainCostModel(
      records, params, ParseTargetTransform(args.transform), args.folds);
  SaveCostModel(trained.model, args.out);
  const CrossValidationReport& report = trained.report;
  json j;
  j["records"] = records.size();
  j["pooled_spearman"] = report.pooled_spearman;
  j["mean_fold_spearman"] = report.mean_fold_spearman
                                ? json(*report.mean_fold_spearman)
                                : json(nullptr);
  j["folds"] = json::array();
  for (const FoldReport& f : report.folds) {
    j["folds"].push_back(
        {{"size", f.size},
         {"r2", f.r2 ? json(*f.r2) : json(nullptr)},
         {"spearman", f.spearman ? json(*f.spearman) : json(nullptr)}});
  }
  j["warnings"] = report.warnings;
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

// CSV with header algo,n,d.
std::vector<PendingTask> ReadPendingTasks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open task list '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line.rfind("algo,n,d", 0) != 0) {
    throw DataError("task list header must be algo,n,d");
  }
  std::vector<PendingTask> tasks;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string algo, n, d;
    if (!std::getline(fields, algo, ',') || !std::getline(fields, n, ',') ||
        !std::getline(fields, d)) {
      throw DataError("task list row " + std::to_string(row) + " is malformed");
    }
    try {
      tasks.push_back(
          PendingTask{ParseDetectorAlgo(algo), std::stoul(n), std::stoul(d)});
    } catch (const std::exception& e) {
      throw DataError("task list row " + std::to_string(row) + ": " + e.what());
    }
  }
  return tasks;
}

int RunCostRank(const Globals& g, const std::string& tasks_path) {
  const auto model = ResolveCostModel(g.cost_model, MakeLogger(g));
  if (!model) throw DataError("no cost model available");
  const auto tasks = ReadPendingTasks(tasks_path);
  json j;
  j["ranks"] = ForecastRanks(*model, tasks);
  j["seconds"] = json::array();
  for (const PendingTask& t : tasks) {
    j["seconds"].push_back(model->PredictSeconds(t.n, t.d, t.algo));
  }
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int RunSynth(const Globals& g, std::size_t n, double contamination,
             std::size_t d, const std::string& out) {
  if (!(contamination > 0.0 && contamination < 1.0)) {
    throw ConfigError("--contamination must lie in (0, 1)");
  }
  const auto outliers = static_cast<std::size_t>(
      std::llround(contamination * static_cast<double>(n)));
  if (outliers < 1 || outliers >= n) {
    throw ConfigError("contamination leaves an empty class");
  }
  SaveCsv(SynthBlob(n - outliers, outliers, d, g.seed.value_or(0)), out,
          g.label_col.value_or("label"));
  return kExitOk;
}

int RunSurface(const Globals& g, const std::string& data_path,
               const std::string& algo, std::size_t resolution,
               const std::string& out_path) {
  const DataMatrix data = LoadCsv(data_path, g.label_col);
  const std::uint64_t seed = g.seed.value_or(0);
  const ProjectionPlan plan = IdentityPlan(data.cols());
  const DetectorSpec spec{ParseDetectorAlgo(algo), {}, seed};
  const FittedDetector detector = FitDetector(spec, data, plan);
  ForestParams params;
  params.seed = seed;
  const Approximator approx = Approximate(detector, data, params);
  const auto surface = DecisionSurface(detector, approx, data, resolution);
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw DataError("cannot write '" + out_path + "'");
  out << std::setprecision(17) << "x,y,source_score,approx_score\n";
  for (const SurfacePoint& p : surface) {
    out << p.x << ',' << p.y << ',' << p.source_score << ',' << p.approx_score
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accelerated unsupervised outlier detection ensembles"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  Globals g;
  app.add_option("--config", g.config, "Pipeline config (JSON)");
  app.add_option("--seed", g.seed, "Master seed for all randomness");
  app.add_option("--workers", g.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--label-col", g.label_col, "Label column in input CSVs");
  app.add_option("--scheduler", g.scheduler, "Scheduling policy")
      ->check(CLI::IsMember({"bps", "simple"}));
  app.add_option("--projection", g.projection, "Projection method")
      ->check(CLI::IsMember(
          {"none", "basic", "discrete", "circulant", "toeplitz", "pca", "rs"}));
  app.add_option("--proj-threshold", g.proj_threshold,
                 "Project only when d exceeds this")
      ->check(CLI::PositiveNumber);
  app.add_option("--proj-dim", g.proj_dim, "Projected dimension override")
      ->check(CLI::PositiveNumber);
  app.add_option("--cost-model", g.cost_model, "Cost model bundle directory");
  app.add_flag("--approx", g.approx, "Use or build forest approximators");
  app.add_flag("-q,--quiet", g.quiet, "Suppress progress logging");

  std::function<int()> action;

  std::string data_path, out_path, bundle;
  auto* fit = app.add_subcommand("fit", "Fit an ensemble and save a bundle");
  fit->add_option("--data", data_path, "Training CSV")->required();
  fit->add_option("--out", out_path, "Bundle directory")->required();
  fit->callback([&] { action = [&] { return RunFit(g, data_path, out_path); }; });

  auto* predict = app.add_subcommand("predict", "Score a CSV with a bundle");
  predict->add_option("--bundle", bundle, "Bundle directory")->required();
  predict->add_option("--data", data_path, "Test CSV")->required();
  predict->add_option("--out", out_path, "Scores CSV")->required();
  predict->callback([&] {
    action = [&] { return RunPredict(g, bundle, data_path, out_path); };
  });

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run the benchmark experiments");
  bench->add_option("--datasets", bench_args.datasets,
                    "Directory of labeled CSVs")
      ->required();
  bench->add_option("--out", bench_args.out, "Results CSV")->required();
  bench->add_option("--scheduler-out", bench_args.scheduler_out,
                    "Scheduler summary CSV");
  bench->add_option("--trials", bench_args.trials, "Trials per experiment")
      ->check(CLI::PositiveNumber);
  bench->add_option("--tasks", bench_args.tasks, "Scheduler sweep task counts");
  bench->add_option("--worker-list", bench_args.worker_list,
                    "Scheduler sweep worker counts");
  bench->add_option("--only", bench_args.only, "Experiments to run")
      ->check(CLI::IsMember({"projection", "scheduler", "approximation"}));
  bench->callback([&] { action = [&] { return RunBenchCommand(g, bench_args); }; });

  std::size_t plan_m = 0;
  std::optional<std::size_t> plan_t;
  std::optional<std::string> ranks_path;
  auto* plan = app.add_subcommand("plan", "Print a task-to-worker plan");
  plan->add_option("--m", plan_m, "Task count")->required()->check(
      CLI::PositiveNumber);
  plan->add_option("--t", plan_t, "Worker count")->check(CLI::PositiveNumber);
  plan->add_option("--ranks", ranks_path, "File of per-task ranks");
  plan->callback(
      [&] { action = [&] { return RunPlan(g, plan_m, plan_t, ranks_path); }; });

  auto* cost = app.add_subcommand("cost", "Cost-model tools");
  cost->require_subcommand(1);
  CollectArgs collect_args;
  auto* collect = cost->add_subcommand("collect", "Time detector fits");
  collect->add_option("--datasets", collect_args.datasets, "Directory of CSVs");
  collect->add_flag("--synthetic", collect_args.synthetic,
                    "Use the built-in synthetic corpus");
  collect->add_option("--out", collect_args.out, "Timing CSV")->required();
  collect->add_option("--repeats", collect_args.repeats, "Timed fits per pair")
      ->check(CLI::PositiveNumber);
  collect->add_option("--algos", collect_args.algos, "Algorithms to time");
  collect->callback(
      [&] { action = [&] { return RunCostCollect(g, collect_args); }; });

  TrainArgs train_args;
  auto* train = cost->add_subcommand("train", "Train a cost model");
  train->add_option("--records", train_args.records, "Timing CSV")->required();
  train->add_option("--out", train_args.out, "Cost model directory")->required();
  train->add_option("--transform", train_args.transform, "Target transform")
      ->check(CLI::IsMember({"raw", "log10"}));
  train->add_option("--folds", train_args.folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000));
  train->add_option("--trees", train_args.trees, "Forest size")
      ->check(CLI::PositiveNumber);
  train->callback([&] { action = [&] { return RunCostTrain(g, train_args); }; });

  std::string tasks_path;
  auto* rank = cost->add_subcommand("rank", "Rank pending tasks by cost");
  rank->add_option("--tasks", tasks_path, "CSV with header algo,n,d")
      ->required();
  rank->callback([&] { action = [&] { return RunCostRank(g, tasks_path); }; });

  std::size_t synth_n = 2000, synth_d = 10;
  double contamination = 0.1;
  auto* synth = app.add_subcommand("synth", "Write a synthetic labeled CSV");
  synth->add_option("--n", synth_n, "Total rows")->check(CLI::PositiveNumber);
  synth->add_option("--d", synth_d, "Features")->check(CLI::PositiveNumber);
  synth->add_option("--contamination", contamination, "Outlier fraction");
  synth->add_option("--out", out_path, "Output CSV")->required();
  synth->callback([&] {
    action = [&] { return RunSynth(g, synth_n, contamination, synth_d, out_path); };
  });

  std::string surface_algo = "knn";
  std::size_t resolution = 50;
  auto* surface = app.add_subcommand(
      "surface", "Grid scores of a detector and its approximator (2-D data)");
  surface->add_option("--data", data_path, "Input CSV")->required();
  surface->add_option("--detector", surface_algo, "Detector algorithm");
  surface->add_option("--resolution", resolution, "Grid points per axis")
      ->check(CLI::Range(2, 2000));
  surface->add_option("--out", out_path, "Output CSV")->required();
  surface->callback([&] {
    action = [&] {
      return RunSurface(g, data_path, surface_algo, resolution, out_path);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "odaccel: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "odaccel: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "odaccel: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "odaccel: error: " << e.what() << '\n';
    return kExitData;
  }
}
