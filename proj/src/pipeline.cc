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

#include "odaccel/pipeline.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "odaccel/bundle.h"
#include "odaccel/error.h"
#include "odaccel/random.h"

namespace odaccel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void CheckKeys(const json& object, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
std::optional<T> OptionalField(const json& object, const std::string& key) {
  if (!object.contains(key) || object[key].is_null()) return std::nullopt;
  return object[key].get<T>();
}

json OptionalJson(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json SpecToJson(const DetectorSpec& spec) {
  return {{"algo", DetectorAlgoName(spec.algo)},
          {"params",
           {{"n_neighbors", spec.params.n_neighbors},
            {"n_bins", OptionalJson(spec.params.n_bins)},
            {"n_trees", spec.params.n_trees},
            {"max_samples", spec.params.max_samples},
            {"n_sub_detectors", spec.params.n_sub_detectors}}},
          {"seed", spec.seed}};
}

DetectorParams ParamsFromJson(const json& params) {
  CheckKeys(params,
            {"n_neighbors", "n_bins", "n_trees", "max_samples",
             "n_sub_detectors"},
            "detector params");
  DetectorParams out;
  out.n_neighbors = params.value("n_neighbors", out.n_neighbors);
  out.n_bins = OptionalField<std::size_t>(params, "n_bins");
  out.n_trees = params.value("n_trees", out.n_trees);
  out.max_samples = params.value("max_samples", out.max_samples);
  out.n_sub_detectors = params.value("n_sub_detectors", out.n_sub_detectors);
  return out;
}

json ForestParamsToJson(const ForestParams& p) {
  return {{"n_trees", p.n_trees},
          {"max_depth", OptionalJson(p.max_depth)},
          {"min_samples_leaf", p.min_samples_leaf},
          {"mtry", OptionalJson(p.mtry)},
          {"bootstrap", p.bootstrap}};
}

ForestParams ForestParamsFromJson(const json& j) {
  CheckKeys(j, {"n_trees", "max_depth", "min_samples_leaf", "mtry", "bootstrap"},
            "approximation.forest");
  ForestParams p;
  p.n_trees = j.value("n_trees", p.n_trees);
  p.max_depth = OptionalField<std::size_t>(j, "max_depth");
  p.min_samples_leaf = j.value("min_samples_leaf", p.min_samples_leaf);
  p.mtry = OptionalField<std::size_t>(j, "mtry");
  p.bootstrap = j.value("bootstrap", p.bootstrap);
  return p;
}

json PlanToJson(const ProjectionPlan& plan, const fs::path& dir,
                const std::string& prefix, std::vector<std::string>& inventory) {
  json out = {{"method", ProjectionMethodName(plan.method())},
              {"d", plan.source_dim()},
              {"k", plan.target_dim()},
              {"seed", plan.seed()}};
  ArrayMap arrays;
  if (!plan.matrix().empty()) {
    arrays["matrix"] = NamedArray::Matrix(plan.target_dim(), plan.source_dim(),
                                          plan.matrix());
  }
  out["arrays"] = WriteArrayGroup(dir, prefix, arrays, inventory);
  return out;
}

ProjectionPlan PlanFromJson(const json& j, const fs::path& dir) {
  const ProjectionMethod method =
      ParseProjectionMethod(j.at("method").get<std::string>());
  const ArrayMap arrays = ReadArrayGroup(dir, j.at("arrays"));
  std::vector<double> matrix;
  if (method != ProjectionMethod::kNone) {
    matrix = RequireArray(arrays, "matrix").data;
  }
  return ProjectionPlan(method, j.at("d").get<std::size_t>(),
                        j.at("k").get<std::size_t>(),
                        j.at("seed").get<std::uint64_t>(), std::move(matrix));
}

SchedulePlan MakeSchedule(SchedulerPolicy policy,
                          const std::optional<std::vector<std::size_t>>& ranks,
                          std::size_t tasks, std::size_t workers) {
  if (policy == SchedulerPolicy::kBalanced && ranks) {
    return PlanBalanced(*ranks, workers);
  }
  return PlanSimple(tasks, workers);
}

std::size_t WorkerCount(const PipelineConfig& config, std::size_t tasks) {
  const std::size_t wanted =
      config.scheduler.workers.value_or(DefaultWorkerCount(tasks));
  return std::max<std::size_t>(1, std::min(wanted, tasks));
}

std::shared_ptr<const CostModel> ModelFor(const PipelineConfig& config,
                                          const RunOptions& options) {
  if (config.scheduler.cost_model_path) {
    return std::make_shared<const CostModel>(
        LoadCostModel(*config.scheduler.cost_model_path));
  }
  return options.cost_model;
}

// Forecast ranks for the given (algo, n, d) tasks, or nullopt (with a log
// line) when the balanced policy cannot be served.
std::optional<std::vector<std::size_t>> RanksFor(
    const PipelineConfig& config, const RunOptions& options,
    const std::vector<PendingTask>& pending) {
  if (config.scheduler.policy != SchedulerPolicy::kBalanced) {
    return std::nullopt;
  }
  const auto model = ModelFor(config, options);
  if (!model) {
    if (options.log) options.log("no cost model available; using simple plan");
    return std::nullopt;
  }
  for (const PendingTask& task : pending) {
    if (!model->Knows(task.algo)) {
      if (options.log) {
        options.log("cost model does not know '" +
                    std::string(DetectorAlgoName(task.algo)) +
                    "'; using simple plan");
      }
      return std::nullopt;
    }
  }
  return ForecastRanks(*model, pending);
}

std::string MemberPrefix(std::size_t index) {
  std::ostringstream s;
  s << "det" << std::setw(3) << std::setfill('0') << index << '/';
  return s.str();
}

}  // namespace

void PipelineConfig::Validate() const {
  if (detectors.empty()) throw ConfigError("config lists no detectors");
  if (projection.threshold < 1) {
    throw ConfigError("projection threshold must be >= 1");
  }
  if (projection.target_dim && *projection.target_dim < 1) {
    throw ConfigError("projection k must be >= 1");
  }
  if (scheduler.workers && *scheduler.workers < 1) {
    throw ConfigError("workers must be >= 1");
  }
  if (approximation.forest.n_trees < 1 ||
      approximation.forest.min_samples_leaf < 1) {
    throw ConfigError("approximation forest parameters out of range");
  }
  for (const DetectorEntry& entry : detectors) {
    try {
      entry.spec.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

json PipelineConfig::ToJson() const {
  json dets = json::array();
  for (const DetectorEntry& entry : detectors) {
    json j = SpecToJson(entry.spec);
    if (entry.approximate) j["approximate"] = *entry.approximate;
    dets.push_back(std::move(j));
  }
  return {
      {"detectors", dets},
      {"projection",
       {{"method", ProjectionMethodName(projection.method)},
        {"threshold", projection.threshold},
        {"k", OptionalJson(projection.target_dim)}}},
      {"scheduler",
       {{"policy", SchedulerPolicyName(scheduler.policy)},
        {"workers", OptionalJson(scheduler.workers)},
        {"cost_model", scheduler.cost_model_path
                           ? json(*scheduler.cost_model_path)
                           : json(nullptr)}}},
      {"approximation",
       {{"enabled", approximation.enabled},
        {"forest", ForestParamsToJson(approximation.forest)}}},
      {"master_seed", master_seed},
      {"standardize", standardize}};
}

PipelineConfig PipelineConfig::FromJson(const json& j) {
  PipelineConfig config;
  try {
    CheckKeys(j,
              {"detectors", "projection", "scheduler", "approximation",
               "master_seed", "standardize"},
              "config");
    config.master_seed = j.value("master_seed", config.master_seed);
    config.standardize = j.value("standardize", config.standardize);

    if (j.contains("projection")) {
      const json& p = j["projection"];
      CheckKeys(p, {"method", "threshold", "k"}, "projection");
      if (p.contains("method")) {
        config.projection.method =
            ParseProjectionMethod(p["method"].get<std::string>());
      }
      config.projection.threshold =
          p.value("threshold", config.projection.threshold);
      config.projection.target_dim = OptionalField<std::size_t>(p, "k");
    }
    if (j.contains("scheduler")) {
      const json& s = j["scheduler"];
      CheckKeys(s, {"policy", "workers", "cost_model"}, "scheduler");
      if (s.contains("policy")) {
        config.scheduler.policy =
            ParseSchedulerPolicy(s["policy"].get<std::string>());
      }
      config.scheduler.workers = OptionalField<std::size_t>(s, "workers");
      config.scheduler.cost_model_path =
          OptionalField<std::string>(s, "cost_model");
    }
    if (j.contains("approximation")) {
      const json& a = j["approximation"];
      CheckKeys(a, {"enabled", "forest"}, "approximation");
      config.approximation.enabled = a.value("enabled", false);
      if (a.contains("forest")) {
        config.approximation.forest = ForestParamsFromJson(a["forest"]);
      }
    }

    if (!j.contains("detectors") || !j["detectors"].is_array()) {
      throw ConfigError("config needs a 'detectors' array");
    }
    for (const json& d : j["detectors"]) {
      CheckKeys(d, {"algo", "params", "seed", "approximate", "repeat"},
                "detector");
      DetectorEntry entry;
      entry.spec.algo = ParseDetectorAlgo(d.at("algo").get<std::string>());
      if (d.contains("params")) entry.spec.params = ParamsFromJson(d["params"]);
      entry.approximate = OptionalField<bool>(d, "approximate");
      const auto seed = OptionalField<std::uint64_t>(d, "seed");
      const std::size_t repeat = d.value("repeat", std::size_t{1});
      if (repeat < 1) throw ConfigError("repeat must be >= 1");
      for (std::size_t r = 0; r < repeat; ++r) {
        DetectorEntry copy = entry;
        copy.spec.seed =
            seed.value_or(config.master_seed + config.detectors.size());
        config.detectors.push_back(std::move(copy));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  config.Validate();
  return config;
}

PipelineConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return PipelineConfig::FromJson(j);
}

std::uint64_t ProjectionSeed(std::uint64_t master_seed, std::size_t index) {
  return master_seed + index;
}

std::uint64_t ApproximatorSeed(std::uint64_t master_seed, std::size_t index) {
  return DeriveSeed(master_seed, index);
}

std::size_t Ensemble::failed_count() const {
  std::size_t failed = 0;
  for (const EnsembleMember& m : members) failed += m.detector ? 0 : 1;
  return failed;
}

namespace {

// Builds approximators for the given member indices through the scheduler.
std::vector<TaskFailure> DistillMembers(Ensemble& ensemble,
                                        const std::vector<std::size_t>& which,
                                        const RunOptions& options) {
  if (which.empty()) return {};
  const PipelineConfig& config = ensemble.config;
  std::vector<std::function<Approximator()>> tasks;
  for (std::size_t index : which) {
    tasks.emplace_back([&ensemble, &config, index] {
      ForestParams params = config.approximation.forest;
      params.seed = ApproximatorSeed(config.master_seed, index);
      return Approximate(*ensemble.members[index].detector, *ensemble.train,
                         params);
    });
  }
  // Forests on the same matrix cost about the same; list order is the rank.
  std::vector<std::size_t> ranks(which.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = i + 1;
  const SchedulePlan plan =
      MakeSchedule(config.scheduler.policy, ranks, which.size(),
                   WorkerCount(config, which.size()));
  auto result = Execute(plan, tasks);
  std::vector<TaskFailure> failures;
  for (std::size_t i = 0; i < which.size(); ++i) {
    if (result.results[i]) {
      ensemble.members[which[i]].approximator = std::move(*result.results[i]);
    }
  }
  for (TaskFailure f : result.failures) {
    f.index = which[f.index];
    if (options.log) {
      options.log("approximating detector " + std::to_string(f.index) +
                  " failed: " + f.reason);
    }
    failures.push_back(std::move(f));
  }
  return failures;
}

}  // namespace

Ensemble FitEnsemble(const PipelineConfig& config, const DataMatrix& train_raw,
                     const RunOptions& options) {
  config.Validate();
  Ensemble ensemble;
  ensemble.config = config;
  if (config.standardize) {
    Standardized s = Standardize(train_raw);
    ensemble.stats = std::move(s.stats);
    ensemble.train = std::make_shared<const DataMatrix>(std::move(s.data));
  } else {
    ensemble.train = std::make_shared<const DataMatrix>(train_raw);
  }
  const DataMatrix& x = *ensemble.train;
  const std::size_t m = config.detectors.size();
  const std::size_t d = x.cols();

  std::optional<std::size_t> k;
  if (config.projection.method != ProjectionMethod::kNone) {
    k = DecideTargetDim(d, config.projection.threshold);
    if (k && config.projection.target_dim) {
      if (*config.projection.target_dim > d) {
        throw ConfigError("projection k exceeds the data dimension");
      }
      k = config.projection.target_dim;
    }
  }

  std::vector<std::function<FittedDetector()>> tasks;
  std::vector<PendingTask> pending;
  for (std::size_t i = 0; i < m; ++i) {
    const DetectorSpec spec = config.detectors[i].spec;
    tasks.emplace_back([&x, &config, spec, k, i, d] {
      const ProjectionPlan plan =
          k ? BuildPlan(config.projection.method, x, *k,
                        ProjectionSeed(config.master_seed, i))
            : IdentityPlan(d);
      return FitDetector(spec, plan.Apply(x), plan);
    });
    pending.push_back(PendingTask{spec.algo, x.rows(), k.value_or(d)});
  }

  const SchedulePlan plan =
      MakeSchedule(config.scheduler.policy, RanksFor(config, options, pending),
                   m, WorkerCount(config, m));
  auto result = Execute(plan, tasks);

  ensemble.members.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    ensemble.members[i].entry = config.detectors[i];
    ensemble.members[i].detector = std::move(result.results[i]);
  }
  for (const TaskFailure& f : result.failures) {
    ensemble.members[f.index].error = f.reason;
    if (options.log) {
      options.log("detector " + std::to_string(f.index) + " (" +
                  std::string(DetectorAlgoName(
                      config.detectors[f.index].spec.algo)) +
                  ") failed: " + f.reason);
    }
  }

  if (config.approximation.enabled) {
    std::vector<std::size_t> which;
    for (std::size_t i = 0; i < m; ++i) {
      const EnsembleMember& member = ensemble.members[i];
      if (member.detector &&
          ShouldApproximate(member.entry.spec, member.entry.approximate)) {
        which.push_back(i);
      }
    }
    for (const TaskFailure& f : DistillMembers(ensemble, which, options)) {
      ensemble.members[f.index].error = "approximation: " + f.reason;
    }
  }
  return ensemble;
}

Predictions PredictEnsemble(Ensemble& ensemble, const DataMatrix& test_raw,
                            bool use_approx, const RunOptions& options) {
  const PipelineConfig& config = ensemble.config;
  if (test_raw.cols() != ensemble.train->cols()) {
    throw DataError("test data has " + std::to_string(test_raw.cols()) +
                    " features, the ensemble was fit on " +
                    std::to_string(ensemble.train->cols()));
  }
  const DataMatrix x =
      ensemble.stats ? ensemble.stats->Apply(test_raw) : test_raw;
  const std::size_t m = ensemble.members.size();

  Predictions out;
  out.approximated.assign(m, false);
  if (use_approx) {
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < m; ++i) {
      const EnsembleMember& member = ensemble.members[i];
      if (!member.detector ||
          !ShouldApproximate(member.entry.spec, member.entry.approximate)) {
        continue;
      }
      out.approximated[i] = true;
      if (!member.approximator) missing.push_back(i);
    }
    out.failures = DistillMembers(ensemble, missing, options);
    for (const TaskFailure& f : out.failures) out.approximated[f.index] = false;
  }

  std::vector<std::function<std::vector<double>()>> tasks;
  std::vector<PendingTask> pending;
  for (std::size_t i = 0; i < m; ++i) {
    const EnsembleMember& member = ensemble.members[i];
    const bool approx = out.approximated[i];
    tasks.emplace_back([&member, &x, approx]() -> std::vector<double> {
      if (!member.detector) throw std::runtime_error(member.error);
      if (approx) return PredictApprox(*member.approximator, x);
      return member.detector->Score(x);
    });
    pending.push_back(
        PendingTask{member.entry.spec.algo, ensemble.train->rows(),
                    member.detector ? member.detector->plan().target_dim()
                                    : ensemble.train->cols()});
  }
  const SchedulePlan plan =
      MakeSchedule(config.scheduler.policy, RanksFor(config, options, pending),
                   m, WorkerCount(config, m));
  auto result = Execute(plan, tasks);

  out.columns.resize(m);
  out.scores.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& entry = ensemble.members[i].entry;
    out.columns[i] = "det" + std::to_string(i) + "_" +
                     std::string(DetectorAlgoName(entry.spec.algo)) +
                     (out.approximated[i] ? "_approx" : "");
    if (result.results[i]) out.scores[i] = std::move(*result.results[i]);
  }
  for (const TaskFailure& f : result.failures) out.failures.push_back(f);
  std::sort(out.failures.begin(), out.failures.end(),
            [](const TaskFailure& a, const TaskFailure& b) {
              return a.index < b.index;
            });
  return out;
}

void SaveEnsemble(const Ensemble& ensemble, const std::string& dir_name) {
  const fs::path dir(dir_name);
  fs::create_directories(dir);
  std::vector<std::string> inventory;
  json manifest;
  manifest["kind"] = "ensemble";
  manifest["created_by"] = {{"tool", "odaccel"}, {"version", kToolVersion}};
  manifest["config"] = ensemble.config.ToJson();

  const DataMatrix& train = *ensemble.train;
  manifest["train"] = WriteArrayGroup(
      dir, "",
      {{"train", NamedArray::Matrix(train.rows(), train.cols(), train.values())}},
      inventory);

  if (ensemble.stats) {
    std::vector<double> degenerate;
    for (bool b : ensemble.stats->degenerate) degenerate.push_back(b ? 1.0 : 0.0);
    manifest["standardization"] = WriteArrayGroup(
        dir, "stats/",
        {{"mean", NamedArray::Vector(ensemble.stats->mean)},
         {"std", NamedArray::Vector(ensemble.stats->std)},
         {"degenerate", NamedArray::Vector(std::move(degenerate))}},
        inventory);
  } else {
    manifest["standardization"] = nullptr;
  }

  json members = json::array();
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const EnsembleMember& member = ensemble.members[i];
    const std::string prefix = MemberPrefix(i);
    json j;
    j["index"] = i;
    j["spec"] = SpecToJson(member.entry.spec);
    if (member.entry.approximate) j["approximate"] = *member.entry.approximate;
    j["status"] = member.detector ? "ok" : "failed";
    j["error"] = member.error;
    if (member.detector) {
      const FittedDetector& fd = *member.detector;
      j["projection"] =
          PlanToJson(fd.plan(), dir, prefix + "projection/", inventory);
      j["state"] = WriteArrayGroup(dir, prefix + "state/",
                                   fd.model().ExportState(), inventory);
      j["train_scores"] = WriteArrayGroup(
          dir, prefix,
          {{"train_scores", NamedArray::Vector(fd.train_scores())}}, inventory);
    }
    if (member.approximator) {
      j["approximator"] = WriteArrayGroup(
          dir, prefix + "approx/", member.approximator->forest.Export(),
          inventory);
    } else {
      j["approximator"] = nullptr;
    }
    members.push_back(std::move(j));
  }
  manifest["detectors"] = std::move(members);
  WriteManifest(dir, std::move(manifest), inventory);
}

Ensemble LoadEnsemble(const std::string& dir_name) {
  const fs::path dir(dir_name);
  const json manifest = ReadManifest(dir, "ensemble");
  Ensemble ensemble;
  try {
    ensemble.config = PipelineConfig::FromJson(manifest.at("config"));
    const ArrayMap train = ReadArrayGroup(dir, manifest.at("train"));
    const NamedArray& t = RequireArray(train, "train");
    if (t.shape.size() != 2) throw DataError("training matrix must be 2-d");
    ensemble.train =
        std::make_shared<const DataMatrix>(t.shape[0], t.shape[1], t.data);

    if (!manifest.at("standardization").is_null()) {
      const ArrayMap stats =
          ReadArrayGroup(dir, manifest.at("standardization"));
      FeatureStats fs_stats;
      fs_stats.mean = RequireArray(stats, "mean").data;
      fs_stats.std = RequireArray(stats, "std").data;
      for (double v : RequireArray(stats, "degenerate").data) {
        fs_stats.degenerate.push_back(v != 0.0);
      }
      if (fs_stats.mean.size() != t.shape[1] ||
          fs_stats.std.size() != t.shape[1] ||
          fs_stats.degenerate.size() != t.shape[1]) {
        throw DataError("standardization arrays do not match the data width");
      }
      ensemble.stats = std::move(fs_stats);
    }

    const json& members = manifest.at("detectors");
    if (members.size() != ensemble.config.detectors.size()) {
      throw DataError("manifest detector list disagrees with its config");
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      const json& j = members[i];
      EnsembleMember member;
      member.entry = ensemble.config.detectors[i];
      member.error = j.value("error", "");
      if (j.at("status") == "ok") {
        ProjectionPlan plan = PlanFromJson(j.at("projection"), dir);
        if (plan.source_dim() != t.shape[1]) {
          throw DataError("projection plan does not match the data width");
        }
        const ArrayMap scores = ReadArrayGroup(dir, j.at("train_scores"));
        member.detector = RestoreDetector(
            member.entry.spec, std::move(plan),
            ReadArrayGroup(dir, j.at("state")),
            RequireArray(scores, "train_scores").data);
      }
      if (!j.at("approximator").is_null() && member.detector) {
        Forest forest =
            Forest::Import(ReadArrayGroup(dir, j.at("approximator")));
        member.approximator =
            Approximator{member.entry.spec, member.detector->plan(),
                         std::move(forest), true};
      }
      ensemble.members.push_back(std::move(member));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("corrupt bundle manifest: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("corrupt bundle config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("corrupt bundle: ") + e.what());
  }
  return ensemble;
}

void WritePredictionsCsv(const Predictions& predictions,
                         const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  std::size_t rows = 0;
  for (const auto& column : predictions.scores) {
    rows = std::max(rows, column.size());
  }
  out << "row";
  for (const std::string& name : predictions.columns) out << ',' << name;
  out << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t r = 0; r < rows; ++r) {
    out << r;
    for (const auto& column : predictions.scores) {
      out << ',';
      if (column.empty()) {
        out << "nan";
      } else {
        out << column[r];
      }
    }
    out << '\n';
  }
}

std::shared_ptr<const CostModel> ResolveCostModel(
    const std::optional<std::string>& path, const LogFn& log) {
  const std::string target = path.value_or(ODACCEL_DEFAULT_COST_MODEL);
  try {
    return std::make_shared<const CostModel>(LoadCostModel(target));
  } catch (const std::exception& e) {
    if (path) throw;
    if (log) log("default cost model unavailable: " + std::string(e.what()));
    return nullptr;
  }
}

}  // namespace odaccel
