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

#include "odaccel/scheduler.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace odaccel {

std::string_view SchedulerPolicyName(SchedulerPolicy policy) {
  return policy == SchedulerPolicy::kBalanced ? "bps" : "simple";
}

SchedulerPolicy ParseSchedulerPolicy(std::string_view name) {
  if (name == "bps") return SchedulerPolicy::kBalanced;
  if (name == "simple") return SchedulerPolicy::kSimple;
  throw std::invalid_argument("unknown scheduler '" + std::string(name) +
                              "' (expected bps or simple)");
}

std::vector<double> SchedulePlan::RankSums() const {
  std::vector<double> sums(workers, 0.0);
  for (std::size_t w = 0; w < workers; ++w) {
    for (std::size_t task : assignments[w]) {
      sums[w] += static_cast<double>(ranks[task]);
    }
  }
  return sums;
}

void SchedulePlan::CheckPartition() const {
  if (workers < 1 || assignments.size() != workers) {
    throw std::logic_error("plan worker count is inconsistent");
  }
  std::vector<bool> seen(tasks, false);
  std::size_t count = 0;
  for (const auto& assigned : assignments) {
    for (std::size_t task : assigned) {
      if (task >= tasks || seen[task]) {
        throw std::logic_error("plan assignments are not a partition");
      }
      seen[task] = true;
      ++count;
    }
  }
  if (count != tasks) throw std::logic_error("plan omits tasks");
}

SchedulePlan PlanBalanced(std::span<const std::size_t> ranks,
                          std::size_t workers) {
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  const std::size_t m = ranks.size();
  if (m < 1) throw std::invalid_argument("need at least one task");
  std::vector<std::size_t> task_of_rank(m + 1, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (ranks[i] < 1 || ranks[i] > m || task_of_rank[ranks[i]] != m) {
      throw std::invalid_argument("ranks must be a permutation of 1..m");
    }
    task_of_rank[ranks[i]] = i;
  }

  SchedulePlan plan;
  plan.tasks = m;
  plan.workers = workers;
  plan.ranks.assign(ranks.begin(), ranks.end());
  plan.assignments.resize(workers);
  std::vector<std::size_t> load(workers, 0);
  for (std::size_t rank = m; rank >= 1; --rank) {
    std::size_t target = 0;
    for (std::size_t w = 1; w < workers; ++w) {
      if (load[w] < load[target]) target = w;
    }
    plan.assignments[target].push_back(task_of_rank[rank]);
    load[target] += rank;
  }
  return plan;
}

SchedulePlan PlanSimple(std::size_t tasks, std::size_t workers) {
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  if (tasks < 1) throw std::invalid_argument("need at least one task");
  SchedulePlan plan;
  plan.tasks = tasks;
  plan.workers = workers;
  plan.ranks.resize(tasks);
  std::iota(plan.ranks.begin(), plan.ranks.end(), std::size_t{1});
  plan.assignments.resize(workers);
  const std::size_t chunk = (tasks + workers - 1) / workers;
  for (std::size_t i = 0; i < tasks; ++i) {
    plan.assignments[i / chunk].push_back(i);
  }
  return plan;
}

double Imbalance(const SchedulePlan& plan, std::span<const double> loads) {
  if (loads.size() != plan.tasks) {
    throw std::invalid_argument("load count does not match task count");
  }
  double total = 0.0;
  for (double v : loads) total += v;
  const double mean = total / static_cast<double>(plan.workers);
  double objective = 0.0;
  for (const auto& assigned : plan.assignments) {
    double sum = 0.0;
    for (std::size_t task : assigned) sum += loads[task];
    objective += std::abs(sum - mean);
  }
  return objective;
}

double Makespan(const SchedulePlan& plan, std::span<const double> loads) {
  if (loads.size() != plan.tasks) {
    throw std::invalid_argument("load count does not match task count");
  }
  double worst = 0.0;
  for (const auto& assigned : plan.assignments) {
    double sum = 0.0;
    for (std::size_t task : assigned) sum += loads[task];
    worst = std::max(worst, sum);
  }
  return worst;
}

std::size_t DefaultWorkerCount(std::size_t tasks) {
  const std::size_t cores =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(cores, tasks));
}

}  // namespace odaccel
