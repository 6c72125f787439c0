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

#include "odaccel/detectors.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "neighbors.h"
#include "odaccel/error.h"
#include "odaccel/random.h"

namespace odaccel {

namespace {

using internal::Neighborhoods;

// Added to the mean reachability distance so duplicated points get a large
// but finite local reachability density.
constexpr double kLrdEpsilon = 1e-10;
constexpr double kAngleNormFloor = 1e-12;
constexpr double kEulerGamma = 0.5772156649015329;

NamedArray MatrixArray(const DataMatrix& m) {
  return NamedArray::Matrix(m.rows(), m.cols(), m.values());
}

DataMatrix MatrixFromArray(const NamedArray& a) {
  if (a.shape.size() != 2) throw DataError("expected a 2-d array");
  return DataMatrix(a.shape[0], a.shape[1], a.data);
}

void RequireDim(const DataMatrix& data, std::size_t d) {
  if (data.cols() != d) {
    throw DataError("detector expects " + std::to_string(d) +
                    " features, got " + std::to_string(data.cols()));
  }
}

// ---------------------------------------------------------------------------
// kNN / average kNN

class KnnModel : public DetectorModel {
 public:
  KnnModel(DataMatrix train, std::size_t k, bool average)
      : train_(std::move(train)), k_(k), average_(average) {}

  static std::pair<std::shared_ptr<KnnModel>, std::vector<double>> Fit(
      const DataMatrix& train, std::size_t k, bool average) {
    const Neighborhoods nb = internal::TrainNeighbors(train, k);
    auto model = std::make_shared<KnnModel>(train, k, average);
    return {model, model->Reduce(nb, train.rows())};
  }

  std::vector<double> Score(const DataMatrix& projected) const override {
    RequireDim(projected, train_.cols());
    return Reduce(internal::QueryNeighbors(train_, projected, k_),
                  projected.rows());
  }

  ArrayMap ExportState() const override {
    return {{"train", MatrixArray(train_)}};
  }

 private:
  std::vector<double> Reduce(const Neighborhoods& nb, std::size_t rows) const {
    std::vector<double> scores(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto dist = nb.distances_of(i);
      if (average_) {
        double sum = 0.0;
        for (double v : dist) sum += v;
        scores[i] = sum / static_cast<double>(k_);
      } else {
        scores[i] = dist[k_ - 1];
      }
    }
    return scores;
  }

  DataMatrix train_;
  std::size_t k_;
  bool average_;
};

// ---------------------------------------------------------------------------
// Local outlier factor

class LofModel : public DetectorModel {
 public:
  LofModel(DataMatrix train, std::size_t k, std::vector<double> k_distance,
           std::vector<double> lrd)
      : train_(std::move(train)),
        k_(k),
        k_distance_(std::move(k_distance)),
        lrd_(std::move(lrd)) {
    if (k_distance_.size() != train_.rows() || lrd_.size() != train_.rows()) {
      throw DataError("lof state does not match training rows");
    }
  }

  static std::pair<std::shared_ptr<LofModel>, std::vector<double>> Fit(
      const DataMatrix& train, std::size_t k) {
    const std::size_t n = train.rows();
    const Neighborhoods nb = internal::TrainNeighbors(train, k);
    std::vector<double> k_distance(n);
    for (std::size_t i = 0; i < n; ++i) k_distance[i] = nb.distances_of(i)[k - 1];
    std::vector<double> lrd(n);
    for (std::size_t i = 0; i < n; ++i) {
      lrd[i] = Density(nb.indices_of(i), nb.distances_of(i), k_distance);
    }
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = Factor(nb.indices_of(i), lrd[i], lrd);
    }
    auto model = std::make_shared<LofModel>(train, k, std::move(k_distance),
                                            std::move(lrd));
    return {model, std::move(scores)};
  }

  std::vector<double> Score(const DataMatrix& projected) const override {
    RequireDim(projected, train_.cols());
    const Neighborhoods nb = internal::QueryNeighbors(train_, projected, k_);
    std::vector<double> scores(projected.rows());
    for (std::size_t i = 0; i < projected.rows(); ++i) {
      const double own = Density(nb.indices_of(i), nb.distances_of(i),
                                 k_distance_);
      scores[i] = Factor(nb.indices_of(i), own, lrd_);
    }
    return scores;
  }

  ArrayMap ExportState() const override {
    return {{"train", MatrixArray(train_)},
            {"k_distance", NamedArray::Vector(k_distance_)},
            {"lrd", NamedArray::Vector(lrd_)}};
  }

  static std::shared_ptr<LofModel> Restore(const ArrayMap& state,
                                           const std::string& prefix,
                                           std::size_t k) {
    return std::make_shared<LofModel>(
        MatrixFromArray(RequireArray(state, prefix + "train")), k,
        RequireArray(state, prefix + "k_distance").data,
        RequireArray(state, prefix + "lrd").data);
  }

 private:
  // 1 / (mean reachability distance + eps), with
  // reach(p, o) = max(k_distance(o), d(p, o)).
  static double Density(std::span<const std::size_t> neighbors,
                        std::span<const double> distances,
                        const std::vector<double>& k_distance) {
    double sum = 0.0;
    for (std::size_t j = 0; j < neighbors.size(); ++j) {
      sum += std::max(k_distance[neighbors[j]], distances[j]);
    }
    return 1.0 / (sum / static_cast<double>(neighbors.size()) + kLrdEpsilon);
  }

  static double Factor(std::span<const std::size_t> neighbors, double own_lrd,
                       const std::vector<double>& lrd) {
    double sum = 0.0;
    for (std::size_t o : neighbors) sum += lrd[o];
    return sum / static_cast<double>(neighbors.size()) / own_lrd;
  }

  DataMatrix train_;
  std::size_t k_;
  std::vector<double> k_distance_;
  std::vector<double> lrd_;
};

// ---------------------------------------------------------------------------
// Fast angle-based outlier detection over the k-neighborhood

class FastAbodModel : public DetectorModel {
 public:
  FastAbodModel(DataMatrix train, std::size_t k)
      : train_(std::move(train)), k_(k) {}

  static std::pair<std::shared_ptr<FastAbodModel>, std::vector<double>> Fit(
      const DataMatrix& train, std::size_t k) {
    const Neighborhoods nb = internal::TrainNeighbors(train, k);
    auto model = std::make_shared<FastAbodModel>(train, k);
    std::vector<double> scores(train.rows());
    for (std::size_t i = 0; i < train.rows(); ++i) {
      scores[i] = model->PointScore(train.row(i), nb.indices_of(i));
    }
    return {model, std::move(scores)};
  }

  std::vector<double> Score(const DataMatrix& projected) const override {
    RequireDim(projected, train_.cols());
    const Neighborhoods nb = internal::QueryNeighbors(train_, projected, k_);
    std::vector<double> scores(projected.rows());
    for (std::size_t i = 0; i < projected.rows(); ++i) {
      scores[i] = PointScore(projected.row(i), nb.indices_of(i));
    }
    return scores;
  }

  ArrayMap ExportState() const override {
    return {{"train", MatrixArray(train_)}};
  }

 private:
  // Negated variance of <a,b> / (|a|^2 |b|^2) over neighbor pairs, where a and
  // b run from the point to two of its neighbors.
  double PointScore(std::span<const double> p,
                    std::span<const std::size_t> neighbors) const {
    const std::size_t d = train_.cols();
    std::vector<double> a(d);
    std::vector<double> b(d);
    std::vector<double> values;
    for (std::size_t x = 0; x < neighbors.size(); ++x) {
      const auto nx = train_.row(neighbors[x]);
      double aa = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        a[j] = nx[j] - p[j];
        aa += a[j] * a[j];
      }
      if (std::sqrt(aa) < kAngleNormFloor) continue;
      for (std::size_t y = x + 1; y < neighbors.size(); ++y) {
        const auto ny = train_.row(neighbors[y]);
        double bb = 0.0;
        double ab = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          b[j] = ny[j] - p[j];
          bb += b[j] * b[j];
          ab += a[j] * b[j];
        }
        if (std::sqrt(bb) < kAngleNormFloor) continue;
        values.push_back(ab / (aa * bb));
      }
    }
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return -var;
  }

  DataMatrix train_;
  std::size_t k_;
};

// ---------------------------------------------------------------------------
// Histogram-based outlier score

class HbosModel : public DetectorModel {
 public:
  HbosModel(std::vector<double> lo, std::vector<double> hi, std::size_t bins,
            std::vector<double> log_density)
      : lo_(std::move(lo)),
        hi_(std::move(hi)),
        bins_(bins),
        log_density_(std::move(log_density)) {
    if (hi_.size() != lo_.size() || log_density_.size() != lo_.size() * bins_ ||
        bins_ < 2) {
      throw DataError("hbos state is inconsistent");
    }
  }

  static std::pair<std::shared_ptr<HbosModel>, std::vector<double>> Fit(
      const DataMatrix& train, std::size_t bins) {
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    std::vector<double> lo(d);
    std::vector<double> hi(d);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = hi[j] = train(0, j);
      for (std::size_t i = 1; i < n; ++i) {
        lo[j] = std::min(lo[j], train(i, j));
        hi[j] = std::max(hi[j], train(i, j));
      }
    }
    std::vector<double> counts(d * bins, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        counts[j * bins + Bin(train(i, j), lo[j], hi[j], bins)] += 1.0;
      }
    }
    // Laplace smoothing: every bin gets one pseudo-count.
    std::vector<double> log_density(d * bins);
    for (std::size_t j = 0; j < d; ++j) {
      const double width = hi[j] > lo[j]
                               ? (hi[j] - lo[j]) / static_cast<double>(bins)
                               : 1.0;
      const double total = static_cast<double>(n + bins) * width;
      for (std::size_t b = 0; b < bins; ++b) {
        log_density[j * bins + b] = std::log((counts[j * bins + b] + 1.0) / total);
      }
    }
    auto model = std::make_shared<HbosModel>(std::move(lo), std::move(hi), bins,
                                             std::move(log_density));
    return {model, model->Score(train)};
  }

  std::vector<double> Score(const DataMatrix& projected) const override {
    RequireDim(projected, lo_.size());
    std::vector<double> scores(projected.rows(), 0.0);
    for (std::size_t i = 0; i < projected.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < lo_.size(); ++j) {
        s -= log_density_[j * bins_ + Bin(projected(i, j), lo_[j], hi_[j], bins_)];
      }
      scores[i] = s;
    }
    return scores;
  }

  ArrayMap ExportState() const override {
    return {{"bin_min", NamedArray::Vector(lo_)},
            {"bin_max", NamedArray::Vector(hi_)},
            {"log_density",
             NamedArray::Matrix(lo_.size(), bins_, log_density_)}};
  }

 private:
  // Values outside [lo, hi] clamp to the edge bins.
  static std::size_t Bin(double v, double lo, double hi, std::size_t bins) {
    if (v <= lo) return 0;
    if (v >= hi) return bins - 1;
    const auto b = static_cast<std::size_t>((v - lo) / (hi - lo) *
                                            static_cast<double>(bins));
    return std::min(b, bins - 1);
  }

  std::vector<double> lo_;
  std::vector<double> hi_;
  std::size_t bins_;
  std::vector<double> log_density_;
};

// ---------------------------------------------------------------------------
// Isolation forest

struct IsolationNodes {
  std::vector<double> feature;  // -1 marks a leaf
  std::vector<double> threshold;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> size;  // training rows reaching the node
  std::vector<double> tree_offset;
};

class IForestModel : public DetectorModel {
 public:
  IForestModel(IsolationNodes nodes, std::size_t subsample, std::size_t dim)
      : nodes_(std::move(nodes)), subsample_(subsample), dim_(dim) {
    const std::size_t count = nodes_.feature.size();
    if (nodes_.threshold.size() != count || nodes_.left.size() != count ||
        nodes_.right.size() != count || nodes_.size.size() != count ||
        nodes_.tree_offset.empty() || subsample_ < 2) {
      throw DataError("isolation forest state is inconsistent");
    }
  }

  static std::pair<std::shared_ptr<IForestModel>, std::vector<double>> Fit(
      const DataMatrix& train, const DetectorSpec& spec) {
    const std::size_t n = train.rows();
    if (n < 2) throw std::invalid_argument("iforest needs at least 2 rows");
    const std::size_t psi = std::min(spec.params.max_samples, n);
    const auto height_limit = static_cast<std::size_t>(
        std::ceil(std::log2(static_cast<double>(psi))));
    IsolationNodes nodes;
    for (std::size_t t = 0; t < spec.params.n_trees; ++t) {
      Rng rng(DeriveSeed(spec.seed, t));
      nodes.tree_offset.push_back(static_cast<double>(nodes.feature.size()));
      std::vector<std::size_t> rows = rng.SampleWithoutReplacement(n, psi);
      Grow(train, rows, 0, height_limit, rng, nodes);
    }
    auto model = std::make_shared<IForestModel>(std::move(nodes), psi,
                                                train.cols());
    return {model, model->Score(train)};
  }

  std::vector<double> Score(const DataMatrix& projected) const override {
    RequireDim(projected, dim_);
    const double norm = AveragePathLength(subsample_);
    const auto trees = nodes_.tree_offset.size();
    std::vector<double> scores(projected.rows());
    for (std::size_t i = 0; i < projected.rows(); ++i) {
      const auto x = projected.row(i);
      double total = 0.0;
      for (std::size_t t = 0; t < trees; ++t) {
        auto node = static_cast<std::size_t>(nodes_.tree_offset[t]);
        double depth = 0.0;
        while (nodes_.feature[node] >= 0.0) {
          const auto f = static_cast<std::size_t>(nodes_.feature[node]);
          node = static_cast<std::size_t>(x[f] < nodes_.threshold[node]
                                              ? nodes_.left[node]
                                              : nodes_.right[node]);
          depth += 1.0;
        }
        total += depth + AveragePathLength(
                             static_cast<std::size_t>(nodes_.size[node]));
      }
      scores[i] = std::exp2(-(total / static_cast<double>(trees)) / norm);
    }
    return scores;
  }

  ArrayMap ExportState() const override {
    return {{"node_feature", NamedArray::Vector(nodes_.feature)},
            {"node_threshold", NamedArray::Vector(nodes_.threshold)},
            {"node_left", NamedArray::Vector(nodes_.left)},
            {"node_right", NamedArray::Vector(nodes_.right)},
            {"node_size", NamedArray::Vector(nodes_.size)},
            {"tree_offset", NamedArray::Vector(nodes_.tree_offset)},
            {"subsample", NamedArray::Scalar(static_cast<double>(subsample_))},
            {"dim", NamedArray::Scalar(static_cast<double>(dim_))}};
  }

  static std::shared_ptr<IForestModel> Restore(const ArrayMap& state) {
    IsolationNodes nodes{RequireArray(state, "node_feature").data,
                         RequireArray(state, "node_threshold").data,
                         RequireArray(state, "node_left").data,
                         RequireArray(state, "node_right").data,
                         RequireArray(state, "node_size").data,
                         RequireArray(state, "tree_offset").data};
    return std::make_shared<IForestModel>(
        std::move(nodes),
        static_cast<std::size_t>(RequireArray(state, "subsample").data.at(0)),
        static_cast<std::size_t>(RequireArray(state, "dim").data.at(0)));
  }

 private:
  // Appends the subtree for `rows` and returns its node index.
  static std::size_t Grow(const DataMatrix& train,
                          std::vector<std::size_t>& rows, std::size_t depth,
                          std::size_t limit, Rng& rng, IsolationNodes& nodes) {
    const std::size_t id = nodes.feature.size();
    nodes.feature.push_back(-1.0);
    nodes.threshold.push_back(0.0);
    nodes.left.push_back(-1.0);
    nodes.right.push_back(-1.0);
    nodes.size.push_back(static_cast<double>(rows.size()));
    if (rows.size() <= 1 || depth >= limit) return id;

    // Only features that vary inside the node can isolate anything.
    std::vector<std::size_t> splittable;
    std::vector<double> lo;
    std::vector<double> hi;
    for (std::size_t f = 0; f < train.cols(); ++f) {
      double mn = train(rows[0], f);
      double mx = mn;
      for (std::size_t r : rows) {
        mn = std::min(mn, train(r, f));
        mx = std::max(mx, train(r, f));
      }
      if (mx > mn) {
        splittable.push_back(f);
        lo.push_back(mn);
        hi.push_back(mx);
      }
    }
    if (splittable.empty()) return id;

    const std::size_t pick = rng.UniformIndex(splittable.size());
    const std::size_t feature = splittable[pick];
    double threshold = rng.Uniform(lo[pick], hi[pick]);
    if (threshold <= lo[pick]) threshold = std::nextafter(lo[pick], hi[pick]);

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t r : rows) {
      (train(r, feature) < threshold ? left_rows : right_rows).push_back(r);
    }
    nodes.feature[id] = static_cast<double>(feature);
    nodes.threshold[id] = threshold;
    const std::size_t left = Grow(train, left_rows, depth + 1, limit, rng, nodes);
    nodes.left[id] = static_cast<double>(left);
    const std::size_t right =
        Grow(train, right_rows, depth + 1, limit, rng, nodes);
    nodes.right[id] = static_cast<double>(right);
    return id;
  }

  IsolationNodes nodes_;
  std::size_t subsample_;
  std::size_t dim_;
};

// ---------------------------------------------------------------------------
// Feature bagging over LOF

class FeatureBaggingModel : public DetectorModel {
 public:
  struct Member {
    std::vector<std::size_t> features;
    std::shared_ptr<LofModel> lof;
  };

  FeatureBaggingModel(std::vector<Member> members, std::size_t dim)
      : members_(std::move(members)), dim_(dim) {
    if (members_.empty()) throw DataError("feature bagging has no members");
  }

  static std::pair<std::shared_ptr<FeatureBaggingModel>, std::vector<double>>
  Fit(const DataMatrix& train, const DetectorSpec& spec) {
    const std::size_t d = train.cols();
    const std::size_t min_size = (d + 1) / 2;
    std::vector<Member> members;
    std::vector<double> scores(train.rows(), 0.0);
    for (std::size_t m = 0; m < spec.params.n_sub_detectors; ++m) {
      Rng rng(DeriveSeed(spec.seed, m));
      const std::size_t size = min_size + rng.UniformIndex(d - min_size + 1);
      auto features = rng.SampleWithoutReplacement(d, size);
      std::sort(features.begin(), features.end());
      auto [lof, sub_scores] =
          LofModel::Fit(train.SelectColumns(features), spec.params.n_neighbors);
      for (std::size_t i = 0; i < scores.size(); ++i) scores[i] += sub_scores[i];
      members.push_back(Member{std::move(features), std::move(lof)});
    }
    for (double& s : scores) s /= static_cast<double>(members.size());
    return {std::make_shared<FeatureBaggingModel>(std::move(members), d),
            std::move(scores)};
  }

  std::vector<double> Score(const DataMatrix& projected) const override {
    RequireDim(projected, dim_);
    std::vector<double> scores(projected.rows(), 0.0);
    for (const Member& m : members_) {
      const auto sub = m.lof->Score(projected.SelectColumns(m.features));
      for (std::size_t i = 0; i < scores.size(); ++i) scores[i] += sub[i];
    }
    for (double& s : scores) s /= static_cast<double>(members_.size());
    return scores;
  }

  ArrayMap ExportState() const override {
    ArrayMap state;
    state["members"] = NamedArray::Scalar(static_cast<double>(members_.size()));
    state["dim"] = NamedArray::Scalar(static_cast<double>(dim_));
    for (std::size_t m = 0; m < members_.size(); ++m) {
      const std::string prefix = "member" + std::to_string(m) + ".";
      std::vector<double> features(members_[m].features.begin(),
                                   members_[m].features.end());
      state[prefix + "features"] = NamedArray::Vector(std::move(features));
      for (auto& [name, array] : members_[m].lof->ExportState()) {
        state[prefix + name] = array;
      }
    }
    return state;
  }

  static std::shared_ptr<FeatureBaggingModel> Restore(const ArrayMap& state,
                                                      std::size_t k) {
    const auto count =
        static_cast<std::size_t>(RequireArray(state, "members").data.at(0));
    const auto dim =
        static_cast<std::size_t>(RequireArray(state, "dim").data.at(0));
    std::vector<Member> members;
    for (std::size_t m = 0; m < count; ++m) {
      const std::string prefix = "member" + std::to_string(m) + ".";
      Member member;
      for (double f : RequireArray(state, prefix + "features").data) {
        if (f < 0 || f >= static_cast<double>(dim)) {
          throw DataError("feature bagging member index out of range");
        }
        member.features.push_back(static_cast<std::size_t>(f));
      }
      member.lof = LofModel::Restore(state, prefix, k);
      members.push_back(std::move(member));
    }
    return std::make_shared<FeatureBaggingModel>(std::move(members), dim);
  }

 private:
  std::vector<Member> members_;
  std::size_t dim_;
};

}  // namespace

std::string_view DetectorAlgoName(DetectorAlgo algo) {
  switch (algo) {
    case DetectorAlgo::kKnn:
      return "knn";
    case DetectorAlgo::kAknn:
      return "aknn";
    case DetectorAlgo::kLof:
      return "lof";
    case DetectorAlgo::kFastAbod:
      return "fastabod";
    case DetectorAlgo::kHbos:
      return "hbos";
    case DetectorAlgo::kIForest:
      return "iforest";
    case DetectorAlgo::kFeatureBagging:
      return "featurebagging";
  }
  return "unknown";
}

const std::vector<DetectorAlgo>& AllDetectorAlgos() {
  static const std::vector<DetectorAlgo> kAll = {
      DetectorAlgo::kKnn,      DetectorAlgo::kAknn,    DetectorAlgo::kLof,
      DetectorAlgo::kFastAbod, DetectorAlgo::kHbos,    DetectorAlgo::kIForest,
      DetectorAlgo::kFeatureBagging};
  return kAll;
}

DetectorAlgo ParseDetectorAlgo(std::string_view name) {
  for (DetectorAlgo algo : AllDetectorAlgos()) {
    if (DetectorAlgoName(algo) == name) return algo;
  }
  throw std::invalid_argument("unknown detector '" + std::string(name) + "'");
}

void DetectorSpec::Validate() const {
  if (params.n_neighbors < 1) {
    throw std::invalid_argument("n_neighbors must be >= 1");
  }
  if (params.n_bins && *params.n_bins < 2) {
    throw std::invalid_argument("n_bins must be >= 2");
  }
  if (params.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  if (params.max_samples < 2) {
    throw std::invalid_argument("max_samples must be >= 2");
  }
  if (params.n_sub_detectors < 1) {
    throw std::invalid_argument("n_sub_detectors must be >= 1");
  }
}

std::string DetectorSpec::ParamsDigest() const {
  switch (algo) {
    case DetectorAlgo::kKnn:
    case DetectorAlgo::kAknn:
    case DetectorAlgo::kLof:
    case DetectorAlgo::kFastAbod:
      return "n_neighbors=" + std::to_string(params.n_neighbors);
    case DetectorAlgo::kHbos:
      return "n_bins=" +
             (params.n_bins ? std::to_string(*params.n_bins) : "auto");
    case DetectorAlgo::kIForest:
      return "max_samples=" + std::to_string(params.max_samples) +
             ";n_trees=" + std::to_string(params.n_trees);
    case DetectorAlgo::kFeatureBagging:
      return "n_neighbors=" + std::to_string(params.n_neighbors) +
             ";n_sub_detectors=" + std::to_string(params.n_sub_detectors);
  }
  return "";
}

FittedDetector::FittedDetector(DetectorSpec spec, ProjectionPlan plan,
                               std::shared_ptr<const DetectorModel> model,
                               std::vector<double> train_scores)
    : spec_(std::move(spec)),
      plan_(std::move(plan)),
      model_(std::move(model)),
      train_scores_(std::move(train_scores)) {
  for (double s : train_scores_) {
    if (!std::isfinite(s)) throw DataError("non-finite training score");
  }
}

std::vector<double> FittedDetector::Score(const DataMatrix& original) const {
  return model_->Score(plan_.Apply(original));
}

FittedDetector FitDetector(const DetectorSpec& spec,
                           const DataMatrix& projected,
                           const ProjectionPlan& plan) {
  spec.Validate();
  if (projected.cols() != plan.target_dim()) {
    throw DataError("projected data has " + std::to_string(projected.cols()) +
                    " columns but the plan produces " +
                    std::to_string(plan.target_dim()));
  }
  const std::size_t k = spec.params.n_neighbors;
  std::shared_ptr<const DetectorModel> model;
  std::vector<double> scores;
  switch (spec.algo) {
    case DetectorAlgo::kKnn:
    case DetectorAlgo::kAknn: {
      auto fit = KnnModel::Fit(projected, k, spec.algo == DetectorAlgo::kAknn);
      model = std::move(fit.first);
      scores = std::move(fit.second);
      break;
    }
    case DetectorAlgo::kLof: {
      auto fit = LofModel::Fit(projected, k);
      model = std::move(fit.first);
      scores = std::move(fit.second);
      break;
    }
    case DetectorAlgo::kFastAbod: {
      auto fit = FastAbodModel::Fit(projected, k);
      model = std::move(fit.first);
      scores = std::move(fit.second);
      break;
    }
    case DetectorAlgo::kHbos: {
      const std::size_t bins =
          spec.params.n_bins.value_or(static_cast<std::size_t>(std::max(
              2.0, std::ceil(std::sqrt(static_cast<double>(projected.rows()))))));
      auto fit = HbosModel::Fit(projected, bins);
      model = std::move(fit.first);
      scores = std::move(fit.second);
      break;
    }
    case DetectorAlgo::kIForest: {
      auto fit = IForestModel::Fit(projected, spec);
      model = std::move(fit.first);
      scores = std::move(fit.second);
      break;
    }
    case DetectorAlgo::kFeatureBagging: {
      auto fit = FeatureBaggingModel::Fit(projected, spec);
      model = std::move(fit.first);
      scores = std::move(fit.second);
      break;
    }
  }
  return FittedDetector(spec, plan, std::move(model), std::move(scores));
}

FittedDetector RestoreDetector(const DetectorSpec& spec, ProjectionPlan plan,
                               const ArrayMap& state,
                               std::vector<double> train_scores) {
  const std::size_t k = spec.params.n_neighbors;
  std::shared_ptr<const DetectorModel> model;
  switch (spec.algo) {
    case DetectorAlgo::kKnn:
    case DetectorAlgo::kAknn:
      model = std::make_shared<KnnModel>(
          MatrixFromArray(RequireArray(state, "train")), k,
          spec.algo == DetectorAlgo::kAknn);
      break;
    case DetectorAlgo::kLof:
      model = LofModel::Restore(state, "", k);
      break;
    case DetectorAlgo::kFastAbod:
      model = std::make_shared<FastAbodModel>(
          MatrixFromArray(RequireArray(state, "train")), k);
      break;
    case DetectorAlgo::kHbos: {
      const NamedArray& density = RequireArray(state, "log_density");
      if (density.shape.size() != 2) throw DataError("bad hbos density shape");
      model = std::make_shared<HbosModel>(RequireArray(state, "bin_min").data,
                                          RequireArray(state, "bin_max").data,
                                          density.shape[1], density.data);
      break;
    }
    case DetectorAlgo::kIForest:
      model = IForestModel::Restore(state);
      break;
    case DetectorAlgo::kFeatureBagging:
      model = FeatureBaggingModel::Restore(state, k);
      break;
  }
  return FittedDetector(spec, std::move(plan), std::move(model),
                        std::move(train_scores));
}

double AveragePathLength(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  const double m = static_cast<double>(n - 1);
  return 2.0 * (std::log(m) + kEulerGamma) - 2.0 * m / static_cast<double>(n);
}

}  // namespace odaccel
