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

#ifndef ODACCEL_ARRAY_STORE_H_
#define ODACCEL_ARRAY_STORE_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace odaccel {

// Flat float64 buffer with a row-major shape. Integers stored in arrays
// (indices, counts) are exact up to 2^53.
struct NamedArray {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  static NamedArray Vector(std::vector<double> values) {
    NamedArray a;
    a.shape = {values.size()};
    a.data = std::move(values);
    return a;
  }
  static NamedArray Matrix(std::size_t rows, std::size_t cols,
                           std::vector<double> values) {
    NamedArray a;
    a.shape = {rows, cols};
    a.data = std::move(values);
    return a;
  }
  static NamedArray Scalar(double value) { return Vector({value}); }

  std::size_t element_count() const;
};

// Keyed by array name; std::map keeps serialization order stable.
using ArrayMap = std::map<std::string, NamedArray>;

// Throws DataError when the array is missing or its size disagrees with the
// recorded shape.
const NamedArray& RequireArray(const ArrayMap& arrays, const std::string& name);

// Raw little-endian IEEE-754 float64, no header.
void WriteFloat64File(const std::string& path, std::span<const double> values);
// Throws DataError if the file is missing or does not hold exactly
// `expected_count` values.
std::vector<double> ReadFloat64File(const std::string& path,
                                    std::size_t expected_count);

}  // namespace odaccel

#endif  // ODACCEL_ARRAY_STORE_H_
