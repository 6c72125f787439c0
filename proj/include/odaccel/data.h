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

// Dense datasets: ingestion, splitting, standardization and the synthetic
// uniform-inliers / normal-outliers generator.

#ifndef ODACCEL_DATA_H_
#define ODACCEL_DATA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace odaccel {

// Row-major n x d matrix of finite reals with optional 0/1 outlier labels
// (1 = outlier). Immutable after construction; safe to share read-only.
class DataMatrix {
 public:
  // Throws DataError when n or d is zero, the value count is not n*d, a value
  // is non-finite, or labels/feature names have the wrong length or domain.
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
             std::optional<std::vector<int>> labels = std::nullopt,
             std::vector<std::string> feature_names = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }

  // Rows selected by index, in the given order; labels follow.
  DataMatrix SelectRows(std::span<const std::size_t> indices) const;
  // Columns selected by index; labels follow, names follow when present.
  DataMatrix SelectColumns(std::span<const std::size_t> indices) const;
  // Same labels and names with a new value buffer of identical shape.
  DataMatrix WithValues(std::vector<double> values) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  std::optional<std::vector<int>> labels_;
  std::vector<std::string> feature_names_;
};

struct SplitPair {
  DataMatrix train;
  DataMatrix test;
  std::uint64_t seed;
};

// Per-feature statistics recorded by Standardize. A feature is degenerate
// when its sample std is below 1e-12; it is centered but not scaled.
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<bool> degenerate;

  // Applies the stored transform. Throws DataError on dimension mismatch.
  DataMatrix Apply(const DataMatrix& data) const;
};

struct Standardized {
  DataMatrix data;
  FeatureStats stats;
};

// Reads a comma-separated file with a header row. When label_column names a
// header field, that column becomes the 0/1 label vector.
DataMatrix LoadCsv(const std::string& path,
                   const std::optional<std::string>& label_column);

// Writes values (and labels under `label_name`, if present) with a header.
void SaveCsv(const DataMatrix& data, const std::string& path,
             const std::string& label_name = "label");

// Seeded shuffle split. With labels, each class is split separately so both
// sides keep the source outlier rate; train size is round(train_frac * n).
SplitPair TrainTestSplit(const DataMatrix& data, double train_frac,
                         std::uint64_t seed);

// Inliers uniform on [-4, 4]^d, outliers normal(0, 4^2) per coordinate.
// Inliers come first, then outliers.
DataMatrix SynthBlob(std::size_t n_inliers, std::size_t n_outliers,
                     std::size_t d, std::uint64_t seed);

// Z-scores every column with the sample (n-1) standard deviation.
Standardized Standardize(const DataMatrix& data);

}  // namespace odaccel

#endif  // ODACCEL_DATA_H_
