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

// Balanced parallel scheduling. Tasks carry a forecast cost rank in [1, m];
// the balanced plan splits them over t workers so every worker's rank sum is
// close to (m^2 + m) / (2t), which minimizes
//
//   sum_i | load(worker_i) - total_load / t |.
//
// The simple plan hands out contiguous chunks in submission order, which is
// what ensemble frameworks typically do.

#ifndef ODACCEL_SCHEDULER_H_
#define ODACCEL_SCHEDULER_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace odaccel {

enum class SchedulerPolicy { kBalanced, kSimple };

std::string_view SchedulerPolicyName(SchedulerPolicy policy);
// Accepts "bps" and "simple".
SchedulerPolicy ParseSchedulerPolicy(std::string_view name);

struct SchedulePlan {
  std::vector<std::vector<std::size_t>> assignments;  // per worker
  std::vector<std::size_t> ranks;                     // per task, 1-based
  std::size_t tasks = 0;
  std::size_t workers = 0;

  // Sum of ranks per worker.
  std::vector<double> RankSums() const;
  // Throws std::logic_error unless the assignments partition [0, tasks).
  void CheckPartition() const;
};

// Longest-processing-time greedy: tasks by descending rank, each to the
// worker with the smallest rank sum (lowest index on ties). Throws
// std::invalid_argument unless ranks is a permutation of 1..m and t >= 1.
SchedulePlan PlanBalanced(std::span<const std::size_t> ranks,
                          std::size_t workers);

// Contiguous chunks of ceil(m / t) tasks; trailing workers may be empty.
// Ranks are set to 1..m in task order since the plan ignores them.
SchedulePlan PlanSimple(std::size_t tasks, std::size_t workers);

// sum over workers of |worker load - total / t|. Throws std::invalid_argument
// when loads.size() != plan.tasks.
double Imbalance(const SchedulePlan& plan, std::span<const double> loads);

// Largest per-worker load.
double Makespan(const SchedulePlan& plan, std::span<const double> loads);

// Worker count default: logical cores, capped by the task count.
std::size_t DefaultWorkerCount(std::size_t tasks);

struct TaskFailure {
  std::size_t index = 0;
  std::string reason;
};

template <typename T>
struct ExecutionResult {
  std::vector<std::optional<T>> results;  // task-index order
  std::vector<TaskFailure> failures;      // sorted by index

  bool ok() const { return failures.empty(); }
};

// Runs every worker's task list sequentially on its own thread; workers run
// concurrently. Results land in task-index order, so the output never depends
// on the plan. A throwing task is recorded as a failure and its siblings keep
// running. Tasks must be self-contained: they may share only immutable state.
template <typename T>
ExecutionResult<T> Execute(const SchedulePlan& plan,
                           const std::vector<std::function<T()>>& tasks) {
  if (tasks.size() != plan.tasks) {
    throw std::invalid_argument("task count does not match the plan");
  }
  plan.CheckPartition();

  ExecutionResult<T> out;
  out.results.resize(tasks.size());
  std::mutex failure_mutex;

  auto run_worker = [&](const std::vector<std::size_t>& assigned) {
    for (std::size_t index : assigned) {
      try {
        out.results[index].emplace(tasks[index]());
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        out.failures.push_back(TaskFailure{index, e.what()});
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        out.failures.push_back(TaskFailure{index, "unknown exception"});
      }
    }
  };

  if (plan.workers == 1) {
    run_worker(plan.assignments[0]);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(plan.workers);
    for (const auto& assigned : plan.assignments) {
      if (!assigned.empty()) threads.emplace_back(run_worker, std::cref(assigned));
    }
  }
  std::sort(out.failures.begin(), out.failures.end(),
            [](const TaskFailure& a, const TaskFailure& b) {
              return a.index < b.index;
            });
  return out;
}

}  // namespace odaccel

#endif  // ODACCEL_SCHEDULER_H_
