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

#ifndef ODACCEL_METRICS_H_
#define ODACCEL_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace odaccel {

struct EvalResult {
  double roc_auc = 0.0;
  double p_at_n = 0.0;
  std::size_t n_outliers = 0;
};

// 1-based ranks, ties share the average of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Mann-Whitney form: P(outlier score > inlier score) + P(tie) / 2, computed
// from rank sums. Throws std::invalid_argument unless both classes appear.
double RocAuc(std::span<const int> labels, std::span<const double> scores);

// Fraction of outliers among the top-n scores, n = number of outliers. Equal
// scores are ordered by original index, so the lower index wins a cutoff tie.
double PrecisionAtN(std::span<const int> labels, std::span<const double> scores);

EvalResult Evaluate(std::span<const int> labels, std::span<const double> scores);

// Pearson correlation of average ranks. Throws std::invalid_argument for
// fewer than 3 values, length mismatch, or constant input on either side.
double Spearman(std::span<const double> a, std::span<const double> b);

}  // namespace odaccel

#endif  // ODACCEL_METRICS_H_
