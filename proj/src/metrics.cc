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

#include "odaccel/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace odaccel {

namespace {

std::size_t CountPositives(std::span<const int> labels,
                           std::span<const double> scores) {
  if (labels.size() != scores.size()) {
    throw std::invalid_argument("labels and scores differ in length");
  }
  std::size_t positives = 0;
  for (int label : labels) {
    if (label != 0 && label != 1) {
      throw std::invalid_argument("labels must be 0 or 1");
    }
    positives += static_cast<std::size_t>(label);
  }
  if (positives == 0 || positives == labels.size()) {
    throw std::invalid_argument("both classes must be present");
  }
  return positives;
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double RocAuc(std::span<const int> labels, std::span<const double> scores) {
  const std::size_t positives = CountPositives(labels, scores);
  const std::size_t negatives = labels.size() - positives;
  const std::vector<double> ranks = AverageRanks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) rank_sum += ranks[i];
  }
  const double p = static_cast<double>(positives);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

double PrecisionAtN(std::span<const int> labels,
                    std::span<const double> scores) {
  const std::size_t positives = CountPositives(labels, scores);
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  std::size_t hits = 0;
  for (std::size_t i = 0; i < positives; ++i) {
    hits += static_cast<std::size_t>(labels[order[i]]);
  }
  return static_cast<double>(hits) / static_cast<double>(positives);
}

EvalResult Evaluate(std::span<const int> labels,
                    std::span<const double> scores) {
  return EvalResult{RocAuc(labels, scores), PrecisionAtN(labels, scores),
                    CountPositives(labels, scores)};
}

double Spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spearman inputs differ in length");
  }
  if (a.size() < 3) throw std::invalid_argument("spearman needs >= 3 values");
  const std::vector<double> ra = AverageRanks(a);
  const std::vector<double> rb = AverageRanks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw std::invalid_argument("spearman undefined for constant input");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace odaccel
