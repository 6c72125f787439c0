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

// Drives the odaccel binary end to end and checks exit codes and outputs.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.h"

namespace odaccel {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Cli(const testing::TempDir& dir, const std::string& args) {
  const std::string out = dir.File("stdout.txt");
  const std::string err = dir.File("stderr.txt");
  const std::string command = "cd '" + dir.path().string() + "' && '" +
                              ODACCEL_CLI_PATH + "' " + args + " >'" + out +
                              "' 2>'" + err + "'";
  const int status = std::system(command.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::ReadFile(out);
  r.err = testing::ReadFile(err);
  return r;
}

std::size_t HeaderColumns(const std::string& csv) {
  const std::string header = csv.substr(0, csv.find('\n'));
  return static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
}

constexpr const char* kConfig = R"({
  "detectors": [{"algo": "knn"}, {"algo": "lof"}, {"algo": "iforest",
                 "params": {"n_trees": 25}}, {"algo": "hbos"}],
  "scheduler": {"policy": "simple"},
  "approximation": {"forest": {"n_trees": 20}}
})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::WriteFile(dir_.File("config.json"), kConfig);
    ASSERT_EQ(Cli(dir_, "synth --n 200 --d 25 --seed 1 --out train.csv").code, 0);
    ASSERT_EQ(Cli(dir_, "synth --n 60 --d 25 --seed 2 --out test.csv").code, 0);
  }
  testing::TempDir dir_;
};

TEST_F(CliTest, FitPredictRoundTrip) {
  CliRun fit = Cli(dir_,
                "fit --config config.json --label-col label --seed 3 "
                "--data train.csv --out bundle");
  ASSERT_EQ(fit.code, 0) << fit.err;
  CliRun predict = Cli(dir_,
                    "predict --label-col label --approx --bundle bundle "
                    "--data test.csv --out scores.csv");
  ASSERT_EQ(predict.code, 0) << predict.err;
  const std::string csv = testing::ReadFile(dir_.File("scores.csv"));
  EXPECT_EQ(HeaderColumns(csv), 5u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "row,det0_knn_approx,det1_lof_approx,det2_iforest,det3_hbos");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 61);
  EXPECT_NE(predict.out.find("det2_iforest,"), std::string::npos);
}

TEST_F(CliTest, OutputsAreReproducibleAcrossWorkerCounts) {
  for (const char* workers : {"1", "4"}) {
    const std::string w = workers;
    ASSERT_EQ(Cli(dir_, "fit --config config.json --label-col label --seed 5 "
                        "--workers " + w + " --data train.csv --out b" + w)
                  .code,
              0);
    ASSERT_EQ(Cli(dir_, "predict --label-col label --approx --workers " + w +
                            " --bundle b" + w + " --data test.csv --out s" + w +
                            ".csv")
                  .code,
              0);
  }
  // The manifest echoes the worker count; everything else must match.
  auto strip = [](std::vector<std::pair<std::string, std::string>> files) {
    for (auto& [name, contents] : files) {
      if (name != "manifest.json") continue;
      auto j = nlohmann::json::parse(contents);
      j["config"]["scheduler"].erase("workers");
      contents = j.dump();
    }
    return files;
  };
  EXPECT_EQ(strip(testing::SnapshotDir(dir_.path() / "b1")),
            strip(testing::SnapshotDir(dir_.path() / "b4")));
  EXPECT_EQ(testing::ReadFile(dir_.File("s1.csv")),
            testing::ReadFile(dir_.File("s4.csv")));
}

TEST_F(CliTest, SameFlagsGiveByteIdenticalFiles) {
  for (const char* tag : {"x", "y"}) {
    const std::string t = tag;
    ASSERT_EQ(Cli(dir_, "fit --config config.json --label-col label --seed 9 "
                        "--approx --data train.csv --out bundle_" + t)
                  .code,
              0);
    ASSERT_EQ(Cli(dir_, "predict --label-col label --approx --bundle bundle_" +
                            t + " --data test.csv --out scores_" + t + ".csv")
                  .code,
              0);
  }
  EXPECT_EQ(testing::SnapshotDir(dir_.path() / "bundle_x"),
            testing::SnapshotDir(dir_.path() / "bundle_y"));
  EXPECT_EQ(testing::ReadFile(dir_.File("scores_x.csv")),
            testing::ReadFile(dir_.File("scores_y.csv")));
}

TEST_F(CliTest, ExitCodes) {
  testing::WriteFile(dir_.File("bad.json"), R"({"detectors": [], "x": 1})");
  EXPECT_EQ(Cli(dir_, "fit --config bad.json --data train.csv --out b").code, 1);
  EXPECT_EQ(Cli(dir_, "fit --data missing.csv --out b").code, 2);
  EXPECT_EQ(Cli(dir_, "fit --nonsense").code, 1);
  EXPECT_EQ(Cli(dir_, "").code, 1);
  EXPECT_EQ(Cli(dir_, "predict --bundle nowhere --data test.csv --out s.csv")
                .code,
            2);

  testing::WriteFile(dir_.File("partial.json"), R"({
    "detectors": [{"algo": "knn", "params": {"n_neighbors": 500}},
                  {"algo": "hbos"}],
    "scheduler": {"policy": "simple"}})");
  const CliRun partial = Cli(dir_,
                          "fit --config partial.json --label-col label "
                          "--data train.csv --out pb");
  EXPECT_EQ(partial.code, 3);
  EXPECT_NE(partial.err.find("failed"), std::string::npos);
  const CliRun predict = Cli(dir_,
                          "predict --label-col label --bundle pb "
                          "--data test.csv --out ps.csv");
  EXPECT_EQ(predict.code, 3);
  const std::string csv = testing::ReadFile(dir_.File("ps.csv"));
  EXPECT_NE(csv.find("\n0,nan,"), std::string::npos);

  // Width mismatch between bundle and test data.
  ASSERT_EQ(Cli(dir_, "synth --n 20 --d 3 --out narrow.csv").code, 0);
  EXPECT_EQ(Cli(dir_, "predict --label-col label --bundle pb "
                      "--data narrow.csv --out x.csv")
                .code,
            2);
}

TEST_F(CliTest, PlanPrintsBalancedAssignment) {
  const CliRun r = Cli(dir_, "plan --m 10 --t 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["policy"], "bps");
  EXPECT_EQ(j["assignments"].size(), 3u);
  double total = 0.0;
  for (double s : j["rank_sums"]) {
    total += s;
    EXPECT_LE(std::abs(s - 55.0 / 3.0), 10.0);
  }
  EXPECT_EQ(total, 55.0);

  testing::WriteFile(dir_.File("ranks.txt"), "3,1,2\n");
  const CliRun ranked = Cli(dir_, "plan --m 3 --t 2 --ranks ranks.txt");
  ASSERT_EQ(ranked.code, 0) << ranked.err;
  const auto rj = nlohmann::json::parse(ranked.out);
  EXPECT_EQ(rj["assignments"][0], nlohmann::json({0}));
  EXPECT_EQ(Cli(dir_, "plan --m 4 --t 2 --ranks ranks.txt").code, 2);
  EXPECT_EQ(Cli(dir_, "--scheduler simple plan --m 5 --t 2").code, 0);
}

TEST(CliCostTest, CollectTrainRank) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir.path() / "data");
  for (int i = 0; i < 5; ++i) {
    const std::string n = std::to_string(60 + 40 * i);
    const std::string d = std::to_string(2 + 3 * i);
    ASSERT_EQ(Cli(dir, "synth --seed " + std::to_string(i) + " --n " + n +
                           " --d " + d + " --out data/s" + std::to_string(i) +
                           ".csv")
                  .code,
              0);
  }
  const CliRun collect = Cli(dir,
                          "cost collect --datasets data --repeats 2 "
                          "--algos knn hbos lof iforest --out t.csv");
  ASSERT_EQ(collect.code, 0) << collect.err;
  const std::string timings = testing::ReadFile(dir.File("t.csv"));
  EXPECT_EQ(timings.substr(0, timings.find('\n')),
            "n,d,algo,params_digest,time_sum_10");
  EXPECT_EQ(std::count(timings.begin(), timings.end(), '\n'), 21);

  const CliRun train = Cli(dir, "cost train --records t.csv --out cm --folds 4");
  ASSERT_EQ(train.code, 0) << train.err;
  const auto report = nlohmann::json::parse(train.out);
  EXPECT_EQ(report["folds"].size(), 4u);
  EXPECT_TRUE(report["pooled_spearman"].is_number());

  testing::WriteFile(dir.File("tasks.csv"),
                     "algo,n,d\nlof,5000,50\nhbos,100,2\nknn,1000,10\n");
  const CliRun rank =
      Cli(dir, "--cost-model cm cost rank --tasks tasks.csv");
  ASSERT_EQ(rank.code, 0) << rank.err;
  auto ranks = nlohmann::json::parse(rank.out)["ranks"].get<std::vector<int>>();
  std::sort(ranks.begin(), ranks.end());
  EXPECT_EQ(ranks, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(Cli(dir, "cost collect --out x.csv").code, 1);
}

TEST(CliMiscTest, SurfaceAndBench) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir.path() / "sets");
  ASSERT_EQ(Cli(dir, "synth --n 150 --d 2 --seed 4 --out sets/blob.csv").code, 0);
  const CliRun surface = Cli(dir,
                          "--label-col label surface --data sets/blob.csv "
                          "--detector lof --resolution 7 --out surf.csv");
  ASSERT_EQ(surface.code, 0) << surface.err;
  const std::string s = testing::ReadFile(dir.File("surf.csv"));
  EXPECT_EQ(s.substr(0, s.find('\n')), "x,y,source_score,approx_score");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 50);

  const CliRun bench = Cli(dir,
                        "bench --datasets sets --out results.csv --trials 2 "
                        "--only projection approximation");
  ASSERT_EQ(bench.code, 0) << bench.err;
  const std::string csv = testing::ReadFile(dir.File("results.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "dataset,detector,variant,roc,p_at_n,fit_seconds,predict_seconds");
  // 3 detectors x 7 methods + 4 detectors x (orig, appr).
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 21 + 8);
  EXPECT_NE(csv.find("blob,lof,appr,"), std::string::npos);

  const CliRun sched = Cli(dir,
                        "bench --datasets sets --out r2.csv --trials 1 "
                        "--only scheduler --tasks 14 --worker-list 2");
  ASSERT_EQ(sched.code, 0) << sched.err;
  const std::string summary = testing::ReadFile(dir.File("r2_scheduler.csv"));
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "dataset,m,t,simple_seconds,bps_seconds,reduction_percent");
  EXPECT_NE(summary.find("blob,14,2,"), std::string::npos);
}

}  // namespace
}  // namespace odaccel
