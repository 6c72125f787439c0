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

#include "odaccel/projection.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "odaccel/error.h"
#include "odaccel/random.h"

namespace odaccel {

std::string_view ProjectionMethodName(ProjectionMethod method) {
  switch (method) {
    case ProjectionMethod::kNone:
      return "none";
    case ProjectionMethod::kBasic:
      return "basic";
    case ProjectionMethod::kDiscrete:
      return "discrete";
    case ProjectionMethod::kCirculant:
      return "circulant";
    case ProjectionMethod::kToeplitz:
      return "toeplitz";
    case ProjectionMethod::kPca:
      return "pca";
    case ProjectionMethod::kRandomSelection:
      return "rs";
  }
  return "unknown";
}

ProjectionMethod ParseProjectionMethod(std::string_view name) {
  for (auto method :
       {ProjectionMethod::kNone, ProjectionMethod::kBasic,
        ProjectionMethod::kDiscrete, ProjectionMethod::kCirculant,
        ProjectionMethod::kToeplitz, ProjectionMethod::kPca,
        ProjectionMethod::kRandomSelection}) {
    if (ProjectionMethodName(method) == name) return method;
  }
  throw std::invalid_argument("unknown projection method '" +
                              std::string(name) + "'");
}

bool IsJohnsonLindenstrauss(ProjectionMethod method) {
  return method == ProjectionMethod::kBasic ||
         method == ProjectionMethod::kDiscrete ||
         method == ProjectionMethod::kCirculant ||
         method == ProjectionMethod::kToeplitz;
}

ProjectionPlan::ProjectionPlan(ProjectionMethod method, std::size_t source_dim,
                               std::size_t target_dim, std::uint64_t seed,
                               std::vector<double> matrix)
    : method_(method),
      source_dim_(source_dim),
      target_dim_(target_dim),
      seed_(seed),
      matrix_(std::move(matrix)) {
  if (target_dim_ < 1 || target_dim_ > source_dim_) {
    throw std::invalid_argument("projection needs 1 <= k <= d (k=" +
                                std::to_string(target_dim_) +
                                ", d=" + std::to_string(source_dim_) + ")");
  }
  if (method_ == ProjectionMethod::kNone) {
    if (target_dim_ != source_dim_ || !matrix_.empty()) {
      throw std::invalid_argument(
          "identity projection must have k == d and no matrix");
    }
  } else if (matrix_.size() != target_dim_ * source_dim_) {
    throw std::invalid_argument("projection matrix has the wrong size");
  }
}

double ProjectionPlan::scale() const {
  return IsJohnsonLindenstrauss(method_)
             ? 1.0 / std::sqrt(static_cast<double>(target_dim_))
             : 1.0;
}

DataMatrix ProjectionPlan::Apply(const DataMatrix& data) const {
  if (data.cols() != source_dim_) {
    throw DataError("projection expects " + std::to_string(source_dim_) +
                    " features, got " + std::to_string(data.cols()));
  }
  if (method_ == ProjectionMethod::kNone) return data;

  const double s = scale();
  std::vector<double> out(data.rows() * target_dim_);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto x = data.row(r);
    for (std::size_t i = 0; i < target_dim_; ++i) {
      const double* w = matrix_.data() + i * source_dim_;
      double acc = 0.0;
      for (std::size_t j = 0; j < source_dim_; ++j) acc += w[j] * x[j];
      out[r * target_dim_ + i] = s * acc;
    }
  }
  return DataMatrix(data.rows(), target_dim_, std::move(out), data.labels());
}

ProjectionPlan IdentityPlan(std::size_t d) {
  return ProjectionPlan(ProjectionMethod::kNone, d, d, 0, {});
}

std::optional<std::size_t> DecideTargetDim(std::size_t d, std::size_t theta) {
  if (d <= theta) return std::nullopt;
  return (d + 1) / 2;
}

ProjectionPlan MakePlan(ProjectionMethod method, std::size_t d, std::size_t k,
                        std::uint64_t seed) {
  if (k < 1 || k > d) {
    throw std::invalid_argument("projection needs 1 <= k <= d (k=" +
                                std::to_string(k) +
                                ", d=" + std::to_string(d) + ")");
  }
  Rng rng(seed);
  std::vector<double> w(k * d, 0.0);
  switch (method) {
    case ProjectionMethod::kNone:
      if (k != d) {
        throw std::invalid_argument("identity projection requires k == d");
      }
      return IdentityPlan(d);
    case ProjectionMethod::kBasic:
      for (double& v : w) v = rng.Normal();
      break;
    case ProjectionMethod::kDiscrete:
      for (double& v : w) v = rng.Rademacher();
      break;
    case ProjectionMethod::kCirculant: {
      std::vector<double> first(d);
      for (double& v : first) v = rng.Normal();
      // Row i is the first row rotated right i times.
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          w[i * d + j] = first[(j + d - (i % d)) % d];
        }
      }
      break;
    }
    case ProjectionMethod::kToeplitz: {
      std::vector<double> first_row(d);
      for (double& v : first_row) v = rng.Normal();
      std::vector<double> first_col(k);
      first_col[0] = first_row[0];
      for (std::size_t i = 1; i < k; ++i) first_col[i] = rng.Normal();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          w[i * d + j] = j >= i ? first_row[j - i] : first_col[i - j];
        }
      }
      break;
    }
    case ProjectionMethod::kRandomSelection: {
      auto picked = rng.SampleWithoutReplacement(d, k);
      std::sort(picked.begin(), picked.end());
      for (std::size_t i = 0; i < k; ++i) w[i * d + picked[i]] = 1.0;
      break;
    }
    case ProjectionMethod::kPca:
      throw std::invalid_argument("pca plans are fit from data");
  }
  return ProjectionPlan(method, d, k, seed, std::move(w));
}

ProjectionPlan FitPcaPlan(const DataMatrix& train, std::size_t k,
                          std::uint64_t seed) {
  const std::size_t n = train.rows();
  const std::size_t d = train.cols();
  if (k < 1 || k > d) {
    throw std::invalid_argument("projection needs 1 <= k <= d");
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          train(i, j);
    }
  }
  x.rowwise() -= x.colwise().mean();
  const Eigen::MatrixXd cov = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw DataError("pca eigendecomposition failed");
  }
  // Eigenvalues come back ascending; the last k columns are the top axes.
  std::vector<double> w(k * d);
  for (std::size_t i = 0; i < k; ++i) {
    const auto col = static_cast<Eigen::Index>(d - 1 - i);
    Eigen::VectorXd axis = solver.eigenvectors().col(col);
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0) axis = -axis;
    for (std::size_t j = 0; j < d; ++j) {
      w[i * d + j] = axis(static_cast<Eigen::Index>(j));
    }
  }
  return ProjectionPlan(ProjectionMethod::kPca, d, k, seed, std::move(w));
}

ProjectionPlan BuildPlan(ProjectionMethod method, const DataMatrix& train,
                         std::size_t k, std::uint64_t seed) {
  if (method == ProjectionMethod::kPca) return FitPcaPlan(train, k, seed);
  return MakePlan(method, train.cols(), k, seed);
}

DistortionReport MeasureDistortion(const DataMatrix& original,
                                   const DataMatrix& projected,
                                   double epsilon) {
  if (original.rows() != projected.rows()) {
    throw std::invalid_argument("distortion needs matching row counts");
  }
  const std::size_t n = original.rows();
  if (n < 2) throw std::invalid_argument("distortion needs at least 2 rows");

  auto squared_distance = [](std::span<const double> a,
                             std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double diff = a[j] - b[j];
      s += diff * diff;
    }
    return s;
  };

  DistortionReport report;
  report.epsilon = epsilon;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  std::size_t within = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++report.pairs;
      const double before = squared_distance(original.row(i), original.row(j));
      const double after = squared_distance(projected.row(i), projected.row(j));
      if (before == 0.0) {
        if (after == 0.0) ++within;
        continue;
      }
      const double ratio = after / before;
      report.min_ratio = std::min(report.min_ratio, ratio);
      report.max_ratio = std::max(report.max_ratio, ratio);
      if (ratio >= 1.0 - epsilon && ratio <= 1.0 + epsilon) ++within;
    }
  }
  if (report.min_ratio > report.max_ratio) {
    report.min_ratio = report.max_ratio = 1.0;
  }
  report.fraction_within =
      static_cast<double>(within) / static_cast<double>(report.pairs);
  return report;
}

}  // namespace odaccel
