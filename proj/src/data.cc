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

#include "odaccel/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "odaccel/error.h"
#include "odaccel/random.h"

namespace odaccel {

namespace {

constexpr double kDegenerateStd = 1e-12;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> ParseReal(std::string_view cell) {
  double value = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values,
                       std::optional<std::vector<int>> labels,
                       std::vector<std::string> feature_names)
    : rows_(rows),
      cols_(cols),
      values_(std::move(values)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
  if (rows_ == 0 || cols_ == 0) {
    throw DataError("dataset must have at least one row and one column");
  }
  if (values_.size() != rows_ * cols_) {
    throw DataError("value count " + std::to_string(values_.size()) +
                    " does not match shape " + std::to_string(rows_) + "x" +
                    std::to_string(cols_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("non-finite value at row " +
                      std::to_string(i / cols_) + ", column " +
                      std::to_string(i % cols_));
    }
  }
  if (labels_) {
    if (labels_->size() != rows_) {
      throw DataError("label count does not match row count");
    }
    for (int label : *labels_) {
      if (label != 0 && label != 1) {
        throw DataError("labels must be 0 or 1");
      }
    }
  }
  if (!feature_names_.empty() && feature_names_.size() != cols_) {
    throw DataError("feature name count does not match column count");
  }
}

DataMatrix DataMatrix::SelectRows(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols_);
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace().reserve(indices.size());
  for (std::size_t index : indices) {
    if (index >= rows_) throw std::out_of_range("row index out of range");
    const auto r = row(index);
    values.insert(values.end(), r.begin(), r.end());
    if (labels) labels->push_back((*labels_)[index]);
  }
  return DataMatrix(indices.size(), cols_, std::move(values),
                    std::move(labels), feature_names_);
}

DataMatrix DataMatrix::SelectColumns(
    std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(rows_ * indices.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j : indices) {
      if (j >= cols_) throw std::out_of_range("column index out of range");
      values.push_back((*this)(i, j));
    }
  }
  std::vector<std::string> names;
  if (!feature_names_.empty()) {
    for (std::size_t j : indices) names.push_back(feature_names_[j]);
  }
  return DataMatrix(rows_, indices.size(), std::move(values), labels_,
                    std::move(names));
}

DataMatrix DataMatrix::WithValues(std::vector<double> values) const {
  return DataMatrix(rows_, cols_, std::move(values), labels_, feature_names_);
}

DataMatrix LoadCsv(const std::string& path,
                   const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const auto header = SplitFields(line);
  std::optional<std::size_t> label_index;
  if (label_column) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == *label_column) label_index = j;
    }
    if (!label_index) {
      throw DataError("label column '" + *label_column + "' not in header of '" +
                      path + "'");
    }
  }

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j != label_index) names.emplace_back(header[j]);
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t rows = 0;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != header.size()) {
      throw DataError(path + ":" + std::to_string(line_number) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const auto value = ParseReal(fields[j]);
      if (j == label_index) {
        if (!value || (*value != 0.0 && *value != 1.0)) {
          throw DataError(path + ":" + std::to_string(line_number) +
                          ": label '" + std::string(fields[j]) +
                          "' in column '" + std::string(header[j]) +
                          "' is not 0 or 1");
        }
        labels.push_back(static_cast<int>(*value));
        continue;
      }
      if (!value) {
        throw DataError(path + ":" + std::to_string(line_number) +
                        ": cell '" + std::string(fields[j]) + "' in column '" +
                        std::string(header[j]) +
                        "' is not a finite real (row " +
                        std::to_string(rows + 1) + ", column " +
                        std::to_string(j + 1) + ")");
      }
      values.push_back(*value);
    }
    ++rows;
  }
  if (rows == 0) throw DataError("'" + path + "' has no data rows");
  if (names.empty()) throw DataError("'" + path + "' has no feature columns");

  std::optional<std::vector<int>> label_vec;
  if (label_index) label_vec = std::move(labels);
  const std::size_t cols = names.size();
  return DataMatrix(rows, cols, std::move(values), std::move(label_vec),
                    std::move(names));
}

void SaveCsv(const DataMatrix& data, const std::string& path,
             const std::string& label_name) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (std::size_t j = 0; j < data.cols(); ++j) {
    if (j > 0) out << ',';
    if (data.feature_names().empty()) {
      out << 'x' << j;
    } else {
      out << data.feature_names()[j];
    }
  }
  if (data.has_labels()) out << ',' << label_name;
  out << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      if (j > 0) out << ',';
      out << data(i, j);
    }
    if (data.has_labels()) out << ',' << (*data.labels())[i];
    out << '\n';
  }
}

SplitPair TrainTestSplit(const DataMatrix& data, double train_frac,
                         std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw std::invalid_argument("train_frac must lie in (0, 1)");
  }
  const std::size_t n = data.rows();
  if (n < 2) throw std::invalid_argument("need at least 2 rows to split");
  auto n_train = static_cast<std::size_t>(
      std::llround(train_frac * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  Rng rng(seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  if (data.has_labels()) {
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n; ++i) {
      by_class[(*data.labels())[i]].push_back(i);
    }
    for (const auto& members : by_class) {
      if (members.size() < 2) {
        throw std::invalid_argument(
            "stratified split needs at least 2 members per class");
      }
    }
    const double outlier_rate =
        static_cast<double>(by_class[1].size()) / static_cast<double>(n);
    auto n_out = static_cast<std::size_t>(
        std::llround(outlier_rate * static_cast<double>(n_train)));
    n_out = std::clamp<std::size_t>(n_out, 1, by_class[1].size() - 1);
    std::size_t n_in = n_train > n_out ? n_train - n_out : 0;
    n_in = std::clamp<std::size_t>(n_in, 1, by_class[0].size() - 1);

    const std::size_t take[2] = {n_in, n_out};
    for (int c = 0; c < 2; ++c) {
      rng.Shuffle(by_class[c]);
      train.insert(train.end(), by_class[c].begin(),
                   by_class[c].begin() + static_cast<long>(take[c]));
      test.insert(test.end(), by_class[c].begin() + static_cast<long>(take[c]),
                  by_class[c].end());
    }
    rng.Shuffle(train);
    rng.Shuffle(test);
  } else {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.Shuffle(order);
    train.assign(order.begin(), order.begin() + static_cast<long>(n_train));
    test.assign(order.begin() + static_cast<long>(n_train), order.end());
  }
  return SplitPair{data.SelectRows(train), data.SelectRows(test), seed};
}

DataMatrix SynthBlob(std::size_t n_inliers, std::size_t n_outliers,
                     std::size_t d, std::uint64_t seed) {
  if (n_inliers + n_outliers == 0) {
    throw std::invalid_argument("synth_blob needs at least one point");
  }
  if (d == 0) throw std::invalid_argument("synth_blob needs d >= 1");
  constexpr double kBoxHalfWidth = 4.0;
  constexpr double kOutlierStd = 4.0;

  Rng rng(seed);
  const std::size_t n = n_inliers + n_outliers;
  std::vector<double> values;
  values.reserve(n * d);
  std::vector<int> labels(n, 0);
  for (std::size_t i = 0; i < n_inliers; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      values.push_back(rng.Uniform(-kBoxHalfWidth, kBoxHalfWidth));
    }
  }
  for (std::size_t i = 0; i < n_outliers; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      values.push_back(kOutlierStd * rng.Normal());
    }
    labels[n_inliers + i] = 1;
  }
  return DataMatrix(n, d, std::move(values), std::move(labels));
}

Standardized Standardize(const DataMatrix& data) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw std::invalid_argument("standardize needs at least 2 rows");

  FeatureStats stats{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0),
                     std::vector<bool>(d, false)};
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += data(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = data(i, j) - mean;
      ss += diff * diff;
    }
    stats.mean[j] = mean;
    stats.std[j] = std::sqrt(ss / static_cast<double>(n - 1));
    stats.degenerate[j] = stats.std[j] < kDegenerateStd;
  }
  DataMatrix scaled = stats.Apply(data);
  return Standardized{std::move(scaled), std::move(stats)};
}

DataMatrix FeatureStats::Apply(const DataMatrix& data) const {
  if (data.cols() != mean.size()) {
    throw DataError("standardization expects " + std::to_string(mean.size()) +
                    " features, got " + std::to_string(data.cols()));
  }
  std::vector<double> values(data.values().size());
  const std::size_t d = data.cols();
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double centered = data(i, j) - mean[j];
      values[i * d + j] = degenerate[j] ? centered : centered / std[j];
    }
  }
  return data.WithValues(std::move(values));
}

}  // namespace odaccel
