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

#include "odaccel/forest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "odaccel/error.h"
#include "odaccel/random.h"

namespace odaccel {

namespace {

// Gains within this fraction of the node's sum of squares count as ties, so
// that shifting all targets by a constant cannot flip the chosen split.
constexpr double kGainTieTolerance = 1e-10;

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const DataMatrix& x, std::span<const double> y,
              const ForestParams& params, std::size_t mtry, Rng& rng,
              std::vector<double>& importance)
      : x_(x),
        y_(y),
        params_(params),
        mtry_(mtry),
        rng_(rng),
        importance_(importance) {}

  RegressionTree Build(std::vector<std::size_t> rows) {
    Grow(rows, 0);
    return std::move(tree_);
  }

 private:
  int Grow(std::vector<std::size_t>& rows, std::size_t depth) {
    const int id = static_cast<int>(tree_.feature.size());
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t r : rows) {
      sum += y_[r];
      lo = std::min(lo, y_[r]);
      hi = std::max(hi, y_[r]);
    }
    const double mean = sum / static_cast<double>(rows.size());
    tree_.feature.push_back(-1);
    tree_.threshold.push_back(0.0);
    tree_.left.push_back(-1);
    tree_.right.push_back(-1);
    tree_.value.push_back(std::clamp(mean, lo, hi));

    const bool depth_reached = params_.max_depth && depth >= *params_.max_depth;
    if (depth_reached || rows.size() < 2 * params_.min_samples_leaf ||
        lo == hi) {
      return id;
    }
    const SplitChoice split = FindSplit(rows, mean);
    if (!split.found) return id;

    importance_[split.feature] += split.gain;
    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t r : rows) {
      (x_(r, split.feature) <= split.threshold ? left_rows : right_rows)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    tree_.feature[static_cast<std::size_t>(id)] =
        static_cast<int>(split.feature);
    tree_.threshold[static_cast<std::size_t>(id)] = split.threshold;
    const int left = Grow(left_rows, depth + 1);
    tree_.left[static_cast<std::size_t>(id)] = left;
    const int right = Grow(right_rows, depth + 1);
    tree_.right[static_cast<std::size_t>(id)] = right;
    return id;
  }

  // Visits features in random order until mtry of them vary inside the node;
  // the best variance reduction among those wins.
  SplitChoice FindSplit(const std::vector<std::size_t>& rows, double mean) {
    const std::size_t d = x_.cols();
    const std::size_t n = rows.size();
    std::vector<std::size_t> order(d);
    for (std::size_t j = 0; j < d; ++j) order[j] = j;
    rng_.Shuffle(order);

    double total = 0.0;
    double node_ss = 0.0;
    for (std::size_t r : rows) {
      total += y_[r] - mean;
      node_ss += (y_[r] - mean) * (y_[r] - mean);
    }
    const double base = total * total / static_cast<double>(n);
    const double tolerance = kGainTieTolerance * node_ss;
    const std::size_t min_leaf = params_.min_samples_leaf;

    SplitChoice best;
    std::vector<std::pair<double, double>> column(n);
    std::size_t visited = 0;
    for (std::size_t feature : order) {
      if (visited >= mtry_) break;
      for (std::size_t i = 0; i < n; ++i) {
        column[i] = {x_(rows[i], feature), y_[rows[i]] - mean};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++visited;

      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_sum += column[i].second;
        if (column[i].first == column[i + 1].first) continue;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = n - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        const double right_sum = total - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                            right_sum * right_sum /
                                static_cast<double>(n_right) -
                            base;
        if (gain <= tolerance) continue;
        double threshold = 0.5 * (column[i].first + column[i + 1].first);
        if (threshold >= column[i + 1].first) threshold = column[i].first;

        bool better = !best.found || gain > best.gain + tolerance;
        if (!better && best.found && std::abs(gain - best.gain) <= tolerance) {
          better = feature < best.feature ||
                   (feature == best.feature && threshold < best.threshold);
        }
        if (better) best = SplitChoice{true, feature, threshold, gain};
      }
    }
    return best;
  }

  const DataMatrix& x_;
  std::span<const double> y_;
  const ForestParams& params_;
  std::size_t mtry_;
  Rng& rng_;
  std::vector<double>& importance_;
  RegressionTree tree_;
};

std::vector<double> ToDoubles(const std::vector<int>& v) {
  return {v.begin(), v.end()};
}

std::vector<int> ToInts(const std::vector<double>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(static_cast<int>(x));
  return out;
}

}  // namespace

double RegressionTree::Predict(std::span<const double> x) const {
  std::size_t node = 0;
  while (feature[node] >= 0) {
    node = static_cast<std::size_t>(
        x[static_cast<std::size_t>(feature[node])] <= threshold[node]
            ? left[node]
            : right[node]);
  }
  return value[node];
}

Forest::Forest(std::vector<RegressionTree> trees, ForestParams params,
               std::size_t input_dim, std::vector<double> feature_importance)
    : trees_(std::move(trees)),
      params_(std::move(params)),
      input_dim_(input_dim),
      feature_importance_(std::move(feature_importance)) {
  if (trees_.empty()) throw DataError("forest has no trees");
  if (feature_importance_.size() != input_dim_) {
    throw DataError("feature importance length does not match input dim");
  }
  for (const RegressionTree& tree : trees_) {
    const std::size_t count = tree.feature.size();
    if (count == 0 || tree.threshold.size() != count ||
        tree.left.size() != count || tree.right.size() != count ||
        tree.value.size() != count) {
      throw DataError("malformed regression tree");
    }
    for (std::size_t i = 0; i < count; ++i) {
      if (tree.feature[i] < 0) continue;
      const auto in_range = [count](int child) {
        return child > 0 && static_cast<std::size_t>(child) < count;
      };
      if (static_cast<std::size_t>(tree.feature[i]) >= input_dim_ ||
          !in_range(tree.left[i]) || !in_range(tree.right[i]) ||
          tree.left[i] <= static_cast<int>(i) ||
          tree.right[i] <= static_cast<int>(i)) {
        throw DataError("malformed regression tree node");
      }
    }
  }
}

double Forest::PredictRow(std::span<const double> x) const {
  double sum = 0.0;
  for (const RegressionTree& tree : trees_) sum += tree.Predict(x);
  return sum / static_cast<double>(trees_.size());
}

std::vector<double> Forest::Predict(const DataMatrix& x) const {
  if (x.cols() != input_dim_) {
    throw DataError("forest expects " + std::to_string(input_dim_) +
                    " features, got " + std::to_string(x.cols()));
  }
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = PredictRow(x.row(i));
  return out;
}

ArrayMap Forest::Export() const {
  std::vector<double> offsets;
  std::vector<double> feature;
  std::vector<double> threshold;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> value;
  for (const RegressionTree& tree : trees_) {
    offsets.push_back(static_cast<double>(feature.size()));
    const auto f = ToDoubles(tree.feature);
    feature.insert(feature.end(), f.begin(), f.end());
    threshold.insert(threshold.end(), tree.threshold.begin(),
                     tree.threshold.end());
    const auto l = ToDoubles(tree.left);
    left.insert(left.end(), l.begin(), l.end());
    const auto r = ToDoubles(tree.right);
    right.insert(right.end(), r.begin(), r.end());
    value.insert(value.end(), tree.value.begin(), tree.value.end());
  }
  const std::vector<double> params = {
      static_cast<double>(params_.n_trees),
      params_.max_depth ? static_cast<double>(*params_.max_depth) : -1.0,
      static_cast<double>(params_.min_samples_leaf),
      params_.mtry ? static_cast<double>(*params_.mtry) : -1.0,
      params_.bootstrap ? 1.0 : 0.0,
      static_cast<double>(params_.seed >> 32),
      static_cast<double>(params_.seed & 0xFFFFFFFFULL),
      static_cast<double>(input_dim_)};
  return {{"forest.tree_offset", NamedArray::Vector(std::move(offsets))},
          {"forest.feature", NamedArray::Vector(std::move(feature))},
          {"forest.threshold", NamedArray::Vector(std::move(threshold))},
          {"forest.left", NamedArray::Vector(std::move(left))},
          {"forest.right", NamedArray::Vector(std::move(right))},
          {"forest.value", NamedArray::Vector(std::move(value))},
          {"forest.importance", NamedArray::Vector(feature_importance_)},
          {"forest.params", NamedArray::Vector(params)}};
}

Forest Forest::Import(const ArrayMap& arrays) {
  const auto& offsets = RequireArray(arrays, "forest.tree_offset").data;
  const auto& feature = RequireArray(arrays, "forest.feature").data;
  const auto& threshold = RequireArray(arrays, "forest.threshold").data;
  const auto& left = RequireArray(arrays, "forest.left").data;
  const auto& right = RequireArray(arrays, "forest.right").data;
  const auto& value = RequireArray(arrays, "forest.value").data;
  const auto& p = RequireArray(arrays, "forest.params").data;
  if (p.size() != 8) throw DataError("forest params array has wrong length");
  const std::size_t count = feature.size();
  if (threshold.size() != count || left.size() != count ||
      right.size() != count || value.size() != count) {
    throw DataError("forest node arrays disagree in length");
  }

  ForestParams params;
  params.n_trees = static_cast<std::size_t>(p[0]);
  if (p[1] >= 0) params.max_depth = static_cast<std::size_t>(p[1]);
  params.min_samples_leaf = static_cast<std::size_t>(p[2]);
  if (p[3] >= 0) params.mtry = static_cast<std::size_t>(p[3]);
  params.bootstrap = p[4] != 0.0;
  params.seed = (static_cast<std::uint64_t>(p[5]) << 32) |
                static_cast<std::uint64_t>(p[6]);
  const auto input_dim = static_cast<std::size_t>(p[7]);

  std::vector<RegressionTree> trees;
  for (std::size_t t = 0; t < offsets.size(); ++t) {
    const auto begin = static_cast<std::size_t>(offsets[t]);
    const std::size_t end = t + 1 < offsets.size()
                                ? static_cast<std::size_t>(offsets[t + 1])
                                : count;
    if (begin >= end || end > count) {
      throw DataError("forest tree offsets are inconsistent");
    }
    const auto slice = [begin, end](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + static_cast<long>(begin),
                                 v.begin() + static_cast<long>(end));
    };
    RegressionTree tree;
    tree.feature = ToInts(slice(feature));
    tree.threshold = slice(threshold);
    tree.left = ToInts(slice(left));
    tree.right = ToInts(slice(right));
    tree.value = slice(value);
    trees.push_back(std::move(tree));
  }
  return Forest(std::move(trees), params, input_dim,
                RequireArray(arrays, "forest.importance").data);
}

Forest FitForest(const DataMatrix& x, std::span<const double> y,
                 const ForestParams& params) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < 2) throw std::invalid_argument("forest needs at least 2 rows");
  if (y.size() != n) {
    throw std::invalid_argument("forest target length " +
                                std::to_string(y.size()) +
                                " does not match row count " +
                                std::to_string(n));
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite target");
  }
  if (params.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  if (params.min_samples_leaf < 1) {
    throw std::invalid_argument("min_samples_leaf must be >= 1");
  }
  const std::size_t mtry = params.mtry.value_or(std::max<std::size_t>(1, d / 3));
  if (mtry < 1 || mtry > d) {
    throw std::invalid_argument("mtry must lie in [1, d]");
  }

  std::vector<double> importance(d, 0.0);
  std::vector<RegressionTree> trees;
  trees.reserve(params.n_trees);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng rng(DeriveSeed(params.seed, t));
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      for (std::size_t& r : rows) r = rng.UniformIndex(n);
    } else {
      for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    }
    trees.push_back(
        TreeBuilder(x, y, params, mtry, rng, importance).Build(std::move(rows)));
  }

  double total = 0.0;
  for (double v : importance) total += v;
  if (total > 0.0) {
    for (double& v : importance) v /= total;
  }
  return Forest(std::move(trees), params, d, std::move(importance));
}

}  // namespace odaccel
