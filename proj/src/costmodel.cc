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

#include "odaccel/costmodel.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "odaccel/bundle.h"
#include "odaccel/error.h"
#include "odaccel/metrics.h"
#include "odaccel/random.h"

namespace odaccel {

namespace {

constexpr double kMinSeconds = 1e-9;
constexpr std::size_t kMinRecords = 20;

double Transform(double seconds, TargetTransform transform) {
  seconds = std::max(seconds, kMinSeconds);
  return transform == TargetTransform::kLog10 ? std::log10(seconds) : seconds;
}

double Inverse(double value, TargetTransform transform) {
  const double seconds =
      transform == TargetTransform::kLog10 ? std::pow(10.0, value) : value;
  return std::isfinite(seconds) ? std::max(seconds, kMinSeconds) : kMinSeconds;
}

std::vector<DetectorAlgo> VocabularyOf(std::span<const CostRecord> records) {
  std::vector<DetectorAlgo> vocabulary;
  for (DetectorAlgo algo : AllDetectorAlgos()) {
    const bool present =
        std::any_of(records.begin(), records.end(),
                    [algo](const CostRecord& r) { return r.algo == algo; });
    if (present) vocabulary.push_back(algo);
  }
  return vocabulary;
}

DataMatrix FeatureMatrix(std::span<const CostRecord> records,
                         std::span<const std::size_t> rows,
                         std::span<const DetectorAlgo> vocabulary) {
  std::vector<double> values;
  for (std::size_t r : rows) {
    const auto f = Featurize(records[r].n, records[r].d, records[r].algo,
                             vocabulary);
    values.insert(values.end(), f.begin(), f.end());
  }
  return DataMatrix(rows.size(), 2 + vocabulary.size(), std::move(values));
}

std::optional<double> RSquared(std::span<const double> actual,
                               std::span<const double> predicted) {
  double mean = 0.0;
  for (double v : actual) mean += v;
  mean /= static_cast<double>(actual.size());
  double ss_tot = 0.0;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ss_tot += (actual[i] - mean) * (actual[i] - mean);
    ss_res += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
  }
  if (ss_tot == 0.0) return std::nullopt;
  return 1.0 - ss_res / ss_tot;
}

std::optional<double> TrySpearman(std::span<const double> a,
                                  std::span<const double> b) {
  try {
    return Spearman(a, b);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::string_view TargetTransformName(TargetTransform transform) {
  return transform == TargetTransform::kLog10 ? "log10" : "raw";
}

TargetTransform ParseTargetTransform(std::string_view name) {
  if (name == "log10") return TargetTransform::kLog10;
  if (name == "raw") return TargetTransform::kRaw;
  throw std::invalid_argument("unknown target transform '" +
                              std::string(name) + "'");
}

std::vector<double> Featurize(std::size_t n, std::size_t d, DetectorAlgo algo,
                              std::span<const DetectorAlgo> vocabulary) {
  const auto it = std::find(vocabulary.begin(), vocabulary.end(), algo);
  if (it == vocabulary.end()) {
    throw std::invalid_argument("algorithm '" +
                                std::string(DetectorAlgoName(algo)) +
                                "' is not in the cost model vocabulary");
  }
  std::vector<double> features(2 + vocabulary.size(), 0.0);
  features[0] = static_cast<double>(n);
  features[1] = static_cast<double>(d);
  features[2 + static_cast<std::size_t>(it - vocabulary.begin())] = 1.0;
  return features;
}

CostModel::CostModel(Forest forest, std::vector<DetectorAlgo> vocabulary,
                     TargetTransform transform)
    : forest_(std::move(forest)),
      vocabulary_(std::move(vocabulary)),
      transform_(transform) {
  if (vocabulary_.empty()) throw DataError("cost model vocabulary is empty");
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    for (std::size_t j = i + 1; j < vocabulary_.size(); ++j) {
      if (vocabulary_[i] == vocabulary_[j]) {
        throw DataError("cost model vocabulary has duplicates");
      }
    }
  }
  if (forest_.input_dim() != 2 + vocabulary_.size()) {
    throw DataError("cost model forest does not match its vocabulary");
  }
}

bool CostModel::Knows(DetectorAlgo algo) const {
  return std::find(vocabulary_.begin(), vocabulary_.end(), algo) !=
         vocabulary_.end();
}

double CostModel::PredictSeconds(std::size_t n, std::size_t d,
                                 DetectorAlgo algo) const {
  const auto features = Featurize(n, d, algo, vocabulary_);
  return Inverse(forest_.PredictRow(features), transform_);
}

std::vector<std::size_t> RanksFromForecasts(std::span<const double> forecasts) {
  std::vector<std::size_t> order(forecasts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return forecasts[a] < forecasts[b];
  });
  std::vector<std::size_t> ranks(forecasts.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = pos + 1;
  return ranks;
}

std::vector<std::size_t> ForecastRanks(const CostModel& model,
                                       std::span<const PendingTask> pending) {
  std::vector<double> forecasts;
  forecasts.reserve(pending.size());
  for (const PendingTask& task : pending) {
    forecasts.push_back(model.PredictSeconds(task.n, task.d, task.algo));
  }
  return RanksFromForecasts(forecasts);
}

std::vector<CorpusShape> DefaultCorpusShapes() {
  return {{500, 5},    {500, 100},  {1000, 20}, {1000, 50}, {2000, 10},
          {2000, 40},  {4000, 5},   {4000, 20}, {8000, 5},  {8000, 10}};
}

std::vector<NamedDataset> SyntheticCorpus(std::span<const CorpusShape> shapes,
                                          std::uint64_t seed) {
  std::vector<NamedDataset> out;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto [n, d] = shapes[i];
    const std::size_t outliers = std::max<std::size_t>(1, n / 10);
    if (n <= outliers) throw std::invalid_argument("corpus shape too small");
    out.push_back(NamedDataset{
        "synth_n" + std::to_string(n) + "_d" + std::to_string(d),
        SynthBlob(n - outliers, outliers, d, DeriveSeed(seed, i))});
  }
  return out;
}

TimingCollection CollectTimings(
    std::span<const DetectorSpec> specs, std::span<const NamedDataset> datasets,
    std::size_t repeats, const std::function<void(const std::string&)>& log) {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  TimingCollection out;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t i = 0; i < datasets.size(); ++i) {
      const DataMatrix& data = datasets[i].data;
      const ProjectionPlan plan = IdentityPlan(data.cols());
      try {
        FitDetector(specs[s], data, plan);  // warm-up
        double total = 0.0;
        for (std::size_t r = 0; r < repeats; ++r) {
          const auto start = std::chrono::steady_clock::now();
          FitDetector(specs[s], data, plan);
          total += std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
        }
        out.records.push_back(CostRecord{data.rows(), data.cols(), specs[s].algo,
                                         specs[s].ParamsDigest(),
                                         std::max(total, kMinSeconds)});
        if (log) {
          std::ostringstream msg;
          msg << DetectorAlgoName(specs[s].algo) << " on " << datasets[i].name
              << " (n=" << data.rows() << ", d=" << data.cols()
              << "): " << total << " s";
          log(msg.str());
        }
      } catch (const std::exception& e) {
        out.skipped.push_back(SkippedTiming{s, i, e.what()});
        if (log) {
          log("skipped " + std::string(DetectorAlgoName(specs[s].algo)) +
              " on " + datasets[i].name + ": " + e.what());
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> MakeFolds(std::size_t count,
                                                std::size_t folds,
                                                std::uint64_t seed) {
  if (folds < 2 || folds > count) {
    throw std::invalid_argument("fold count must lie in [2, records]");
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t i = 0; i < count; ++i) out[i % folds].push_back(order[i]);
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

TrainedCostModel TrainCostModel(std::span<const CostRecord> records,
                                const ForestParams& params,
                                TargetTransform transform, std::size_t folds) {
  if (records.size() < kMinRecords) {
    throw std::invalid_argument("cost model needs at least " +
                                std::to_string(kMinRecords) +
                                " records, got " +
                                std::to_string(records.size()));
  }
  const std::vector<DetectorAlgo> vocabulary = VocabularyOf(records);
  CrossValidationReport report;
  if (vocabulary.size() < 2) {
    report.warnings.push_back(
        "records cover a single algorithm; forecasts only reflect n and d");
  }

  std::vector<double> target(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    target[i] = Transform(records[i].time_sum, transform);
  }

  std::vector<double> out_of_fold(records.size(), 0.0);
  double fold_rho_sum = 0.0;
  std::size_t fold_rho_count = 0;
  const auto fold_sets = MakeFolds(records.size(), folds, params.seed);
  for (std::size_t f = 0; f < fold_sets.size(); ++f) {
    const auto& held = fold_sets[f];
    std::vector<std::size_t> train_rows;
    for (std::size_t g = 0; g < fold_sets.size(); ++g) {
      if (g != f) {
        train_rows.insert(train_rows.end(), fold_sets[g].begin(),
                          fold_sets[g].end());
      }
    }
    std::sort(train_rows.begin(), train_rows.end());
    std::vector<double> train_target;
    for (std::size_t r : train_rows) train_target.push_back(target[r]);
    ForestParams fold_params = params;
    fold_params.seed = DeriveSeed(params.seed, f + 1);
    const Forest forest = FitForest(
        FeatureMatrix(records, train_rows, vocabulary), train_target,
        fold_params);

    std::vector<double> actual;
    std::vector<double> predicted;
    for (std::size_t r : held) {
      const auto x = Featurize(records[r].n, records[r].d, records[r].algo,
                               vocabulary);
      out_of_fold[r] = forest.PredictRow(x);
      actual.push_back(target[r]);
      predicted.push_back(out_of_fold[r]);
    }
    FoldReport fold;
    fold.size = held.size();
    fold.r2 = RSquared(actual, predicted);
    if (held.size() >= 3) fold.spearman = TrySpearman(actual, predicted);
    if (fold.spearman) {
      fold_rho_sum += *fold.spearman;
      ++fold_rho_count;
    }
    report.folds.push_back(fold);
  }
  const auto pooled = TrySpearman(target, out_of_fold);
  if (!pooled) {
    report.warnings.push_back("pooled spearman undefined (constant input)");
  }
  report.pooled_spearman = pooled.value_or(0.0);
  if (fold_rho_count > 0) {
    report.mean_fold_spearman =
        fold_rho_sum / static_cast<double>(fold_rho_count);
  }

  std::vector<std::size_t> all(records.size());
  std::iota(all.begin(), all.end(), 0);
  Forest forest = FitForest(FeatureMatrix(records, all, vocabulary), target,
                            params);
  return TrainedCostModel{
      CostModel(std::move(forest), vocabulary, transform), std::move(report)};
}

void WriteCostRecords(const std::string& path,
                      std::span<const CostRecord> records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "n,d,algo,params_digest,time_sum_10\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const CostRecord& r : records) {
    out << r.n << ',' << r.d << ',' << DetectorAlgoName(r.algo) << ','
        << r.params_digest << ',' << r.time_sum << '\n';
  }
}

std::vector<CostRecord> ReadCostRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,d,algo,params_digest,time_sum_10") {
    throw DataError("'" + path + "' does not have the timing header");
  }
  std::vector<CostRecord> records;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() == 4 && line.back() == ',') fields.emplace_back();
    const std::string where = path + ":" + std::to_string(line_number);
    if (fields.size() != 5) throw DataError(where + ": expected 5 fields");
    try {
      CostRecord r;
      r.n = std::stoul(fields[0]);
      r.d = std::stoul(fields[1]);
      r.algo = ParseDetectorAlgo(fields[2]);
      r.params_digest = fields[3];
      r.time_sum = std::stod(fields[4]);
      if (r.n < 1 || r.d < 1 || !(r.time_sum > 0.0) ||
          !std::isfinite(r.time_sum)) {
        throw DataError("out-of-range value");
      }
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  return records;
}

void SaveCostModel(const CostModel& model, const std::string& dir) {
  std::vector<std::string> inventory;
  nlohmann::json manifest;
  manifest["kind"] = "cost_model";
  std::vector<std::string> vocabulary;
  for (DetectorAlgo algo : model.vocabulary()) {
    vocabulary.emplace_back(DetectorAlgoName(algo));
  }
  manifest["vocabulary"] = vocabulary;
  manifest["target_transform"] = TargetTransformName(model.transform());
  manifest["arrays"] =
      WriteArrayGroup(dir, "arrays/", model.forest().Export(), inventory);
  WriteManifest(dir, manifest, inventory);
}

CostModel LoadCostModel(const std::string& dir) {
  const nlohmann::json manifest = ReadManifest(dir, "cost_model");
  try {
    std::vector<DetectorAlgo> vocabulary;
    for (const auto& name : manifest.at("vocabulary")) {
      vocabulary.push_back(ParseDetectorAlgo(name.get<std::string>()));
    }
    return CostModel(
        Forest::Import(ReadArrayGroup(dir, manifest.at("arrays"))),
        std::move(vocabulary),
        ParseTargetTransform(manifest.at("target_transform").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed cost model manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed cost model: ") + e.what());
  }
}

}  // namespace odaccel
