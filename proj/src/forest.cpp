// Copyright 2026 The extrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Random forest of CART trees (Gini impurity) grown on bootstrap samples with
// per-split feature subsampling; prediction is a majority vote.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "extrav/models.hpp"
#include "extrav/random.hpp"

namespace extrav::detail {

namespace {

using Counts = std::array<int, 3>;

Label majority(const Counts& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (c[i] > c[best]) best = i;
  }
  return kAllLabels[best];
}

double gini(const Counts& c, int n) {
  if (n == 0) return 0.0;
  double s = 1.0;
  for (int v : c) {
    const double p = static_cast<double>(v) / n;
    s -= p * p;
  }
  return s;
}

class TreeBuilder {
 public:
  TreeBuilder(std::span<const LabeledSample> samples, const Hyperparameters& hp, int mtry, Rng& rng)
      : samples_(samples), hp_(hp), mtry_(mtry), rng_(rng),
        features_(samples.front().features.size()) {}

  std::vector<TreeNode> build(std::vector<std::size_t> rows) {
    nodes_.clear();
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<std::size_t>& rows, int depth) {
    Counts counts{};
    for (auto r : rows) ++counts[static_cast<std::size_t>(label_index(samples_[r].label))];
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(TreeNode{-1, 0.0, -1, -1, majority(counts)});

    const int n = static_cast<int>(rows.size());
    const bool pure = std::count(counts.begin(), counts.end(), 0) >= 2;
    const bool depth_capped = hp_.forest_max_depth > 0 && depth >= hp_.forest_max_depth;
    if (pure || depth_capped || n < 2 * hp_.forest_min_leaf) return id;

    std::vector<std::size_t> candidates(features_);
    std::iota(candidates.begin(), candidates.end(), 0);
    // Partial Fisher-Yates: the first mtry entries are the sampled features.
    for (int i = 0; i < mtry_; ++i) {
      const auto j = static_cast<std::size_t>(i) +
                     static_cast<std::size_t>(rng_.below(features_ - static_cast<std::size_t>(i)));
      std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
    }

    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> sorted = rows;
    for (int c = 0; c < mtry_; ++c) {
      const auto f = candidates[static_cast<std::size_t>(c)];
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        const double va = samples_[a].features[f], vb = samples_[b].features[f];
        return va != vb ? va < vb : a < b;
      });
      Counts left{};
      Counts right = counts;
      for (int i = 0; i + 1 < n; ++i) {
        const auto r = sorted[static_cast<std::size_t>(i)];
        const auto li = static_cast<std::size_t>(label_index(samples_[r].label));
        ++left[li];
        --right[li];
        const double here = samples_[r].features[f];
        const double next = samples_[sorted[static_cast<std::size_t>(i) + 1]].features[f];
        if (here == next) continue;
        const int nl = i + 1, nr = n - nl;
        if (nl < hp_.forest_min_leaf || nr < hp_.forest_min_leaf) continue;
        const double impurity = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = static_cast<int>(f);
          best_threshold = here + (next - here) / 2.0;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> lrows, rrows;
    for (auto r : rows) {
      (samples_[r].features[static_cast<std::size_t>(best_feature)] <= best_threshold ? lrows : rrows)
          .push_back(r);
    }
    const int l = grow(lrows, depth + 1);
    const int rr = grow(rrows, depth + 1);
    auto& node = nodes_[static_cast<std::size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = rr;
    return id;
  }

  std::span<const LabeledSample> samples_;
  const Hyperparameters& hp_;
  int mtry_;
  Rng& rng_;
  std::size_t features_;
  std::vector<TreeNode> nodes_;
};

Label predict_tree(const std::vector<TreeNode>& tree, std::span<const double> x) {
  std::size_t i = 0;
  while (tree[i].feature >= 0) {
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(tree[i].feature)] <= tree[i].threshold
                                     ? tree[i].left
                                     : tree[i].right);
  }
  return tree[i].label;
}

}  // namespace

ForestState train_forest(std::span<const LabeledSample> samples, const Hyperparameters& hp,
                         std::uint64_t seed) {
  const auto d = samples.front().features.size();
  int mtry = hp.forest_features > 0
                 ? hp.forest_features
                 : static_cast<int>(std::floor(std::sqrt(static_cast<double>(d))));
  mtry = std::clamp(mtry, 1, static_cast<int>(std::max<std::size_t>(d, 1)));

  Rng rng(seed);
  ForestState state;
  TreeBuilder builder(samples, hp, mtry, rng);
  for (int t = 0; t < hp.forest_trees; ++t) {
    std::vector<std::size_t> rows(samples.size());
    for (auto& r : rows) r = static_cast<std::size_t>(rng.below(samples.size()));
    state.trees.push_back(builder.build(std::move(rows)));
  }
  return state;
}

Label predict_forest(const ForestState& s, std::span<const double> x) {
  Counts votes{};
  for (const auto& tree : s.trees) ++votes[static_cast<std::size_t>(label_index(predict_tree(tree, x)))];
  return majority(votes);
}

}  // namespace extrav::detail
