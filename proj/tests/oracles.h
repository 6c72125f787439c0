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

// Straightforward reference implementations used to check the library.
// Written for clarity over speed; none of them share code with src/.

#ifndef ODACCEL_TESTS_ORACLES_H_
#define ODACCEL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace odaccel::oracle {

using Points = std::vector<std::vector<double>>;

inline double Distance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const long double diff = static_cast<long double>(a[j]) - b[j];
    s += diff * diff;
  }
  return static_cast<double>(std::sqrt(s));
}

// The k nearest training points of q as (distance, index) ascending. With
// skip >= 0 that training index is left out.
inline std::vector<std::pair<double, std::size_t>> Nearest(
    const Points& train, const std::vector<double>& q, std::size_t k,
    long skip) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (static_cast<long>(i) == skip) continue;
    all.emplace_back(Distance(train[i], q), i);
  }
  std::sort(all.begin(), all.end());
  all.resize(k);
  return all;
}

struct KnnScores {
  std::vector<double> largest;  // knn
  std::vector<double> mean;     // aknn
};

inline KnnScores Knn(const Points& train, const Points& queries, std::size_t k,
                     bool queries_are_train) {
  KnnScores out;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto nn =
        Nearest(train, queries[i], k, queries_are_train ? static_cast<long>(i) : -1);
    double sum = 0.0;
    for (const auto& [dist, idx] : nn) sum += dist;
    out.largest.push_back(nn.back().first);
    out.mean.push_back(sum / static_cast<double>(k));
  }
  return out;
}

// Local outlier factor with reachability distance max(k-dist(o), d(p, o)) and
// local reachability density 1 / (mean reachability + 1e-10).
inline std::vector<double> Lof(const Points& train, const Points& queries,
                               std::size_t k, bool queries_are_train) {
  const std::size_t n = train.size();
  std::vector<std::vector<std::pair<double, std::size_t>>> train_nn(n);
  std::vector<double> kdist(n);
  for (std::size_t i = 0; i < n; ++i) {
    train_nn[i] = Nearest(train, train[i], k, static_cast<long>(i));
    kdist[i] = train_nn[i].back().first;
  }
  auto lrd_of = [&](const std::vector<std::pair<double, std::size_t>>& nn) {
    double reach = 0.0;
    for (const auto& [dist, o] : nn) reach += std::max(kdist[o], dist);
    return 1.0 / (reach / static_cast<double>(k) + 1e-10);
  };
  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) lrd[i] = lrd_of(train_nn[i]);

  std::vector<double> out;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto nn = queries_are_train
                        ? train_nn[q]
                        : Nearest(train, queries[q], k, -1);
    double neighbor_lrd = 0.0;
    for (const auto& [dist, o] : nn) neighbor_lrd += lrd[o];
    out.push_back(neighbor_lrd / static_cast<double>(k) / lrd_of(nn));
  }
  return out;
}

// Negated population variance of <a, b> / (|a|^2 |b|^2) over pairs of the k
// nearest neighbors.
inline std::vector<double> FastAbod(const Points& train, const Points& queries,
                                    std::size_t k, bool queries_are_train) {
  std::vector<double> out;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto nn = Nearest(train, queries[q], k,
                            queries_are_train ? static_cast<long>(q) : -1);
    std::vector<double> factors;
    for (std::size_t x = 0; x < nn.size(); ++x) {
      for (std::size_t y = x + 1; y < nn.size(); ++y) {
        double ab = 0.0, aa = 0.0, bb = 0.0;
        for (std::size_t j = 0; j < queries[q].size(); ++j) {
          const double a = train[nn[x].second][j] - queries[q][j];
          const double b = train[nn[y].second][j] - queries[q][j];
          ab += a * b;
          aa += a * a;
          bb += b * b;
        }
        if (aa == 0.0 || bb == 0.0) continue;
        factors.push_back(ab / (aa * bb));
      }
    }
    if (factors.empty()) {
      out.push_back(0.0);
      continue;
    }
    const double mean = std::accumulate(factors.begin(), factors.end(), 0.0) /
                        static_cast<double>(factors.size());
    double var = 0.0;
    for (double f : factors) var += (f - mean) * (f - mean);
    out.push_back(-var / static_cast<double>(factors.size()));
  }
  return out;
}

// Minimum over all assignments of tasks to t workers of
// sum_w |load_w - total / t|, by exhaustive enumeration of t^m labelings.
inline double OptimalImbalance(const std::vector<double>& loads,
                               std::size_t workers) {
  const std::size_t m = loads.size();
  const double total = std::accumulate(loads.begin(), loads.end(), 0.0);
  const double target = total / static_cast<double>(workers);
  std::vector<std::size_t> label(m, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<double> sum(workers, 0.0);
    for (std::size_t i = 0; i < m; ++i) sum[label[i]] += loads[i];
    double objective = 0.0;
    for (double s : sum) objective += std::fabs(s - target);
    best = std::min(best, objective);
    std::size_t pos = 0;
    while (pos < m && ++label[pos] == workers) label[pos++] = 0;
    if (pos == m) break;
  }
  return best;
}

inline Points Rows(const std::vector<double>& values, std::size_t cols) {
  Points out;
  for (std::size_t i = 0; i + cols <= values.size(); i += cols) {
    out.emplace_back(values.begin() + static_cast<long>(i),
                     values.begin() + static_cast<long>(i + cols));
  }
  return out;
}

// |a - b| <= rel * max(|a|, |b|).
inline bool RelClose(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace odaccel::oracle

#endif  // ODACCEL_TESTS_ORACLES_H_
