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


#pragma once

// Three-class extraversion classifiers (random forest, Gaussian naive Bayes,
// C-SVM with RBF kernel), confusion-matrix metrics and stratified k-fold CV.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "extrav/features.hpp"
#include "extrav/labeling.hpp"

namespace extrav {

enum class ModelKind { random_forest, naive_bayes, svm_rbf };

inline constexpr ModelKind kAllModelKinds[] = {ModelKind::random_forest, ModelKind::naive_bayes,
                                               ModelKind::svm_rbf};

std::string_view model_kind_name(ModelKind k);
ModelKind model_kind_from_name(std::string_view s);

struct Hyperparameters {
  double svm_c = 1.0;
  /// 0 selects 1 / feature_count.
  double svm_gamma = 0.0;
  double svm_tolerance = 1e-3;
  std::int64_t svm_max_iterations = 10'000'000;

  int forest_trees = 100;
  /// 0 means unlimited depth.
  int forest_max_depth = 0;
  int forest_min_leaf = 1;
  /// Features tried per split; 0 selects floor(sqrt(feature_count)).
  int forest_features = 0;

  /// Added to every per-class variance, relative to the largest feature variance.
  double bayes_var_smoothing = 1e-9;
};

struct LabeledSample {
  std::string user_id;
  std::vector<double> features;
  Label label;
};

/// Counts indexed by (true label, predicted label), both via label_index().
class ConfusionMatrix {
 public:
  void add(Label truth, Label predicted, std::int64_t n = 1);
  std::int64_t at(Label truth, Label predicted) const {
    return counts_[label_index(truth)][label_index(predicted)];
  }
  std::int64_t total() const;
  std::int64_t row_total(Label truth) const;
  std::int64_t column_total(Label predicted) const;
  /// 0 when the class has no true samples.
  double recall(Label l) const;
  /// 0 when the class was never predicted.
  double precision(Label l) const;
  double accuracy() const;
  bool is_diagonal() const;

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::array<std::array<std::int64_t, 3>, 3> counts_{};
};

/// Unweighted mean of per-class F1; a class with precision + recall = 0 contributes 0.
double macro_f1(const ConfusionMatrix& c);

// Learned state of each model family. Public so the artifact format is
// inspectable; build them through train().

struct TreeNode {
  /// -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  Label label = Label::neutral;
};

struct ForestState {
  std::vector<std::vector<TreeNode>> trees;
};

struct BayesState {
  std::array<double, 3> log_prior{};
  std::array<std::vector<double>, 3> mean;
  std::array<std::vector<double>, 3> variance;
};

struct BinarySvm {
  Label positive;
  Label negative;
  /// alpha_i * y_i per support vector.
  std::vector<double> coef;
  std::vector<std::vector<double>> support;
  double rho = 0.0;
};

struct SvmState {
  double gamma = 0.0;
  std::vector<BinarySvm> machines;
};

class TrainedModel {
 public:
  using State = std::variant<ForestState, BayesState, SvmState>;

  TrainedModel(ModelKind kind, Hyperparameters hp, std::uint64_t seed, std::size_t feature_count,
               std::uint64_t registry_fingerprint, Standardizer scaler, State state);

  ModelKind kind() const noexcept { return kind_; }
  const Hyperparameters& hyperparameters() const noexcept { return hp_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t feature_count() const noexcept { return feature_count_; }
  std::uint64_t registry_fingerprint() const noexcept { return fingerprint_; }
  const Standardizer& scaler() const noexcept { return scaler_; }
  const State& state() const noexcept { return state_; }

  /// Predicts from an already scaled vector.
  Label predict_scaled(std::span<const double> x) const;

  std::string to_json() const;
  static TrainedModel from_json(std::string_view content);

 private:
  ModelKind kind_;
  Hyperparameters hp_;
  std::uint64_t seed_;
  std::size_t feature_count_;
  std::uint64_t fingerprint_;
  Standardizer scaler_;
  State state_;
};

/// Registry binding and scaling stored with a trained model. An absent scaler
/// means the identity scaling.
struct ModelBinding {
  std::uint64_t registry_fingerprint = 0;
  std::optional<Standardizer> scaler;
};

/// Samples must be standardized and contain every class.
TrainedModel train(ModelKind kind, std::span<const LabeledSample> samples,
                   const Hyperparameters& hp, std::uint64_t seed, ModelBinding binding = {});

/// Scales the raw vector with the model's stored (min, max) pairs, then predicts.
/// Throws when the vector was built from a different registry.
Label classify(const TrainedModel& model, const FeatureVector& v);

struct CVReport {
  ModelKind kind;
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<ConfusionMatrix> fold_confusions;
  ConfusionMatrix pooled;

  double accuracy() const { return pooled.accuracy(); }
  double extrovert_accuracy() const { return pooled.recall(Label::extrovert); }
  double introvert_accuracy() const { return pooled.recall(Label::introvert); }
  double macro_f1() const { return extrav::macro_f1(pooled); }
  double fold_mean_accuracy() const;
  double fold_mean_macro_f1() const;

  std::string to_json() const;
};

/// Stratified k-fold CV. Fold assignment depends only on the seed and on the
/// samples sorted by user_id, so input order does not matter.
CVReport cross_validate(ModelKind kind, std::span<const LabeledSample> samples, int k,
                        std::uint64_t seed, const Hyperparameters& hp);

namespace detail {
ForestState train_forest(std::span<const LabeledSample> samples, const Hyperparameters& hp,
                         std::uint64_t seed);
Label predict_forest(const ForestState& s, std::span<const double> x);
BayesState train_bayes(std::span<const LabeledSample> samples, const Hyperparameters& hp);
Label predict_bayes(const BayesState& s, std::span<const double> x);
SvmState train_svm(std::span<const LabeledSample> samples, const Hyperparameters& hp);
Label predict_svm(const SvmState& s, std::span<const double> x);
}  // namespace detail

}  // namespace extrav
