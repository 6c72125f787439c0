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

#include "neighbors.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "odaccel/error.h"

namespace odaccel::internal {

namespace {

double SquaredDistance(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

// `exclude` is the training row to skip, or train.rows() for none.
void Search(const DataMatrix& train, std::span<const double> query,
            std::size_t exclude, std::size_t k,
            std::vector<std::pair<double, std::size_t>>& scratch,
            std::size_t* out_index, double* out_distance) {
  const std::size_t d = train.cols();
  scratch.clear();
  const double* base = train.values().data();
  for (std::size_t i = 0; i < train.rows(); ++i) {
    if (i == exclude) continue;
    scratch.emplace_back(SquaredDistance(query.data(), base + i * d, d), i);
  }
  std::partial_sort(scratch.begin(), scratch.begin() + static_cast<long>(k),
                    scratch.end());
  for (std::size_t j = 0; j < k; ++j) {
    out_index[j] = scratch[j].second;
    out_distance[j] = std::sqrt(scratch[j].first);
  }
}

}  // namespace

double EuclideanDistance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredDistance(a.data(), b.data(), a.size()));
}

Neighborhoods TrainNeighbors(const DataMatrix& train, std::size_t k) {
  const std::size_t n = train.rows();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("n_neighbors=" + std::to_string(k) +
                                " needs more than " + std::to_string(k) +
                                " training rows, got " + std::to_string(n));
  }
  Neighborhoods result;
  result.k = k;
  result.index.resize(n * k);
  result.distance.resize(n * k);
  std::vector<std::pair<double, std::size_t>> scratch;
  scratch.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Search(train, train.row(i), i, k, scratch, result.index.data() + i * k,
           result.distance.data() + i * k);
  }
  return result;
}

Neighborhoods QueryNeighbors(const DataMatrix& train, const DataMatrix& queries,
                             std::size_t k) {
  if (queries.cols() != train.cols()) {
    throw DataError("query dimension " + std::to_string(queries.cols()) +
                    " does not match training dimension " +
                    std::to_string(train.cols()));
  }
  if (k < 1 || k > train.rows()) {
    throw std::invalid_argument("n_neighbors exceeds training rows");
  }
  Neighborhoods result;
  result.k = k;
  result.index.resize(queries.rows() * k);
  result.distance.resize(queries.rows() * k);
  std::vector<std::pair<double, std::size_t>> scratch;
  scratch.reserve(train.rows());
  for (std::size_t i = 0; i < queries.rows(); ++i) {
    Search(train, queries.row(i), train.rows(), k, scratch,
           result.index.data() + i * k, result.distance.data() + i * k);
  }
  return result;
}

}  // namespace odaccel::internal
