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

// Brute-force k-nearest-neighbor search. Neighbors are ordered by
// (distance, training index), which makes results independent of scan order.

#ifndef ODACCEL_SRC_NEIGHBORS_H_
#define ODACCEL_SRC_NEIGHBORS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "odaccel/data.h"

namespace odaccel::internal {

struct Neighborhoods {
  std::size_t k = 0;
  std::vector<std::size_t> index;  // rows x k
  std::vector<double> distance;    // rows x k, ascending per row

  std::span<const std::size_t> indices_of(std::size_t row) const {
    return {index.data() + row * k, k};
  }
  std::span<const double> distances_of(std::size_t row) const {
    return {distance.data() + row * k, k};
  }
};

double EuclideanDistance(std::span<const double> a, std::span<const double> b);

// Neighbors of every training row among the other training rows.
Neighborhoods TrainNeighbors(const DataMatrix& train, std::size_t k);

// Neighbors of every query row among all training rows.
Neighborhoods QueryNeighbors(const DataMatrix& train, const DataMatrix& queries,
                             std::size_t k);

}  // namespace odaccel::internal

#endif  // ODACCEL_SRC_NEIGHBORS_H_
