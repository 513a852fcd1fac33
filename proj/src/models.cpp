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


#include "extrav/models.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>

#include "extrav/error.hpp"
#include "extrav/random.hpp"
#include "extrav/text.hpp"

namespace extrav {

namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t parse_hex(const std::string& s) { return std::stoull(s, nullptr, 16); }

ojson confusion_to_json(const ConfusionMatrix& c) {
  ojson rows = ojson::array();
  for (Label t : kAllLabels) {
    ojson row = ojson::array();
    for (Label p : kAllLabels) row.push_back(c.at(t, p));
    rows.push_back(row);
  }
  return rows;
}

ojson hp_to_json(const Hyperparameters& hp) {
  ojson j;
  j["svm_c"] = hp.svm_c;
  j["svm_gamma"] = hp.svm_gamma;
  j["svm_tolerance"] = hp.svm_tolerance;
  j["svm_max_iterations"] = hp.svm_max_iterations;
  j["forest_trees"] = hp.forest_trees;
  j["forest_max_depth"] = hp.forest_max_depth;
  j["forest_min_leaf"] = hp.forest_min_leaf;
  j["forest_features"] = hp.forest_features;
  j["bayes_var_smoothing"] = hp.bayes_var_smoothing;
  return j;
}

Hyperparameters hp_from_json(const ojson& j) {
  Hyperparameters hp;
  hp.svm_c = j.at("svm_c").get<double>();
  hp.svm_gamma = j.at("svm_gamma").get<double>();
  hp.svm_tolerance = j.at("svm_tolerance").get<double>();
  hp.svm_max_iterations = j.at("svm_max_iterations").get<std::int64_t>();
  hp.forest_trees = j.at("forest_trees").get<int>();
  hp.forest_max_depth = j.at("forest_max_depth").get<int>();
  hp.forest_min_leaf = j.at("forest_min_leaf").get<int>();
  hp.forest_features = j.at("forest_features").get<int>();
  hp.bayes_var_smoothing = j.at("bayes_var_smoothing").get<double>();
  return hp;
}

ojson state_to_json(const TrainedModel::State& state) {
  ojson j;
  if (const auto* f = std::get_if<ForestState>(&state)) {
    j["trees"] = ojson::array();
    for (const auto& tree : f->trees) {
      ojson nodes = ojson::array();
      for (const auto& n : tree) {
        nodes.push_back(ojson::array({n.feature, n.threshold, n.left, n.right, to_int(n.label)}));
      }
      j["trees"].push_back(std::move(nodes));
    }
  } else if (const auto* b = std::get_if<BayesState>(&state)) {
    j["classes"] = ojson::array();
    for (std::size_t c = 0; c < 3; ++c) {
      ojson cls;
      cls["label"] = to_int(kAllLabels[c]);
      cls["log_prior"] = b->log_prior[c];
      cls["mean"] = b->mean[c];
      cls["variance"] = b->variance[c];
      j["classes"].push_back(std::move(cls));
    }
  } else {
    const auto& s = std::get<SvmState>(state);
    j["gamma"] = s.gamma;
    j["machines"] = ojson::array();
    for (const auto& m : s.machines) {
      ojson mj;
      mj["positive"] = to_int(m.positive);
      mj["negative"] = to_int(m.negative);
      mj["rho"] = m.rho;
      mj["coef"] = m.coef;
      mj["support"] = m.support;
      j["machines"].push_back(std::move(mj));
    }
  }
  return j;
}

TrainedModel::State state_from_json(ModelKind kind, const ojson& j) {
  switch (kind) {
    case ModelKind::random_forest: {
      ForestState f;
      for (const auto& tree : j.at("trees")) {
        std::vector<TreeNode> nodes;
        for (const auto& n : tree) {
          nodes.push_back(TreeNode{n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                   n.at(3).get<int>(), label_from_int(n.at(4).get<int>())});
        }
        f.trees.push_back(std::move(nodes));
      }
      return f;
    }
    case ModelKind::naive_bayes: {
      BayesState b;
      for (const auto& cls : j.at("classes")) {
        const auto c = static_cast<std::size_t>(label_index(label_from_int(cls.at("label").get<int>())));
        b.log_prior[c] = cls.at("log_prior").get<double>();
        b.mean[c] = cls.at("mean").get<std::vector<double>>();
        b.variance[c] = cls.at("variance").get<std::vector<double>>();
      }
      return b;
    }
    case ModelKind::svm_rbf:
      break;
  }
  SvmState s;
  s.gamma = j.at("gamma").get<double>();
  for (const auto& mj : j.at("machines")) {
    s.machines.push_back(BinarySvm{label_from_int(mj.at("positive").get<int>()),
                                   label_from_int(mj.at("negative").get<int>()),
                                   mj.at("coef").get<std::vector<double>>(),
                                   mj.at("support").get<std::vector<std::vector<double>>>(),
                                   mj.at("rho").get<double>()});
  }
  return s;
}

void validate_samples(std::span<const LabeledSample> samples) {
  if (samples.empty()) throw DomainError("train: no samples");
  const auto d = samples.front().features.size();
  std::array<int, 3> per_class{};
  for (const auto& s : samples) {
    if (s.features.size() != d) throw DomainError("train: inconsistent feature width");
    for (double v : s.features) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("train: sample " + s.user_id + " is not standardized into [0, 1]");
      }
    }
    ++per_class[static_cast<std::size_t>(label_index(s.label))];
  }
  for (Label l : kAllLabels) {
    if (per_class[static_cast<std::size_t>(label_index(l))] == 0) {
      throw DomainError("train: no samples of class " + std::string(label_name(l)));
    }
  }
}

}  // namespace

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::random_forest:
      return "random-forest";
    case ModelKind::naive_bayes:
      return "naive-bayes";
    case ModelKind::svm_rbf:
      break;
  }
  return "svm-rbf";
}

ModelKind model_kind_from_name(std::string_view s) {
  for (auto k : kAllModelKinds) {
    if (model_kind_name(k) == s) return k;
  }
  throw Error("unknown model kind '" + std::string(s) +
              "' (expected random-forest, naive-bayes or svm-rbf)");
}

// ---------------------------------------------------------------------------
// Confusion metrics

void ConfusionMatrix::add(Label truth, Label predicted, std::int64_t n) {
  counts_[label_index(truth)][label_index(predicted)] += n;
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t s = 0;
  for (const auto& row : counts_) {
    for (auto v : row) s += v;
  }
  return s;
}

std::int64_t ConfusionMatrix::row_total(Label truth) const {
  std::int64_t s = 0;
  for (auto v : counts_[label_index(truth)]) s += v;
  return s;
}

std::int64_t ConfusionMatrix::column_total(Label predicted) const {
  std::int64_t s = 0;
  for (const auto& row : counts_) s += row[label_index(predicted)];
  return s;
}

double ConfusionMatrix::recall(Label l) const {
  const auto n = row_total(l);
  return n == 0 ? 0.0 : static_cast<double>(at(l, l)) / static_cast<double>(n);
}

double ConfusionMatrix::precision(Label l) const {
  const auto n = column_total(l);
  return n == 0 ? 0.0 : static_cast<double>(at(l, l)) / static_cast<double>(n);
}

double ConfusionMatrix::accuracy() const {
  const auto n = total();
  if (n == 0) return 0.0;
  std::int64_t diag = 0;
  for (Label l : kAllLabels) diag += at(l, l);
  return static_cast<double>(diag) / static_cast<double>(n);
}

bool ConfusionMatrix::is_diagonal() const {
  for (Label t : kAllLabels) {
    for (Label p : kAllLabels) {
      if (t != p && at(t, p) != 0) return false;
    }
  }
  return true;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) counts_[i][j] += other.counts_[i][j];
  }
  return *this;
}

double macro_f1(const ConfusionMatrix& c) {
  if (c.total() <= 0) throw DomainError("macro_f1: empty confusion matrix");
  double sum = 0.0;
  for (Label l : kAllLabels) {
    // 2PR/(P+R) == 2TP/(2TP+FP+FN); the count form avoids 0/0 for unused classes.
    const auto tp = c.at(l, l);
    const auto denom = c.row_total(l) + c.column_total(l);
    if (denom > 0) sum += 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  return sum / 3.0;
}

// ---------------------------------------------------------------------------
// Models

TrainedModel::TrainedModel(ModelKind kind, Hyperparameters hp, std::uint64_t seed,
                           std::size_t feature_count, std::uint64_t registry_fingerprint,
                           Standardizer scaler, State state)
    : kind_(kind),
      hp_(hp),
      seed_(seed),
      feature_count_(feature_count),
      fingerprint_(registry_fingerprint),
      scaler_(std::move(scaler)),
      state_(std::move(state)) {
  if (scaler_.columns() != feature_count_) throw Error("model: scaler width mismatch");
}

Label TrainedModel::predict_scaled(std::span<const double> x) const {
  if (x.size() != feature_count_) {
    throw DomainError("classify: expected " + std::to_string(feature_count_) + " features, got " +
                      std::to_string(x.size()));
  }
  switch (kind_) {
    case ModelKind::random_forest:
      return detail::predict_forest(std::get<ForestState>(state_), x);
    case ModelKind::naive_bayes:
      return detail::predict_bayes(std::get<BayesState>(state_), x);
    case ModelKind::svm_rbf:
      break;
  }
  return detail::predict_svm(std::get<SvmState>(state_), x);
}

std::string TrainedModel::to_json() const {
  ojson j;
  j["format"] = "extrav-model/1";
  j["kind"] = model_kind_name(kind_);
  j["seed"] = seed_;
  j["feature_count"] = feature_count_;
  j["registry_fingerprint"] = text::to_hex(fingerprint_);
  j["hyperparameters"] = hp_to_json(hp_);
  j["scaling"] = {{"min", scaler_.mins()}, {"max", scaler_.maxs()}};
  j["state"] = state_to_json(state_);
  return j.dump(1) + "\n";
}

TrainedModel TrainedModel::from_json(std::string_view content) {
  try {
    const auto j = ojson::parse(content);
    if (j.at("format") != "extrav-model/1") throw Error("model: unsupported format");
    const auto kind = model_kind_from_name(j.at("kind").get<std::string>());
    Standardizer scaler(j.at("scaling").at("min").get<std::vector<double>>(),
                        j.at("scaling").at("max").get<std::vector<double>>());
    return TrainedModel(kind, hp_from_json(j.at("hyperparameters")), j.at("seed").get<std::uint64_t>(),
                        j.at("feature_count").get<std::size_t>(),
                        parse_hex(j.at("registry_fingerprint").get<std::string>()), std::move(scaler),
                        state_from_json(kind, j.at("state")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model: malformed artifact: ") + e.what());
  }
}

TrainedModel train(ModelKind kind, std::span<const LabeledSample> samples,
                   const Hyperparameters& hp, std::uint64_t seed, ModelBinding binding) {
  validate_samples(samples);
  const auto d = samples.front().features.size();
  Standardizer scaler = binding.scaler ? *binding.scaler : Standardizer::identity(d);
  TrainedModel::State state;
  switch (kind) {
    case ModelKind::random_forest:
      state = detail::train_forest(samples, hp, seed);
      break;
    case ModelKind::naive_bayes:
      state = detail::train_bayes(samples, hp);
      break;
    case ModelKind::svm_rbf:
      state = detail::train_svm(samples, hp);
      break;
  }
  return TrainedModel(kind, hp, seed, d, binding.registry_fingerprint, std::move(scaler),
                      std::move(state));
}

Label classify(const TrainedModel& model, const FeatureVector& v) {
  if (v.registry_fingerprint != model.registry_fingerprint()) {
    throw Error("classify: feature registry fingerprint " + text::to_hex(v.registry_fingerprint) +
                " does not match model fingerprint " + text::to_hex(model.registry_fingerprint()));
  }
  return model.predict_scaled(model.scaler().transform(v.values));
}

// ---------------------------------------------------------------------------
// Cross-validation

double CVReport::fold_mean_accuracy() const {
  if (fold_confusions.empty()) return 0.0;
  double s = 0.0;
  for (const auto& c : fold_confusions) s += c.accuracy();
  return s / static_cast<double>(fold_confusions.size());
}

double CVReport::fold_mean_macro_f1() const {
  double s = 0.0;
  int n = 0;
  for (const auto& c : fold_confusions) {
    if (c.total() == 0) continue;
    s += extrav::macro_f1(c);
    ++n;
  }
  return n == 0 ? 0.0 : s / n;
}

std::string CVReport::to_json() const {
  ojson j;
  j["format"] = "extrav-cv/1";
  j["kind"] = model_kind_name(kind);
  j["folds"] = folds;
  j["seed"] = seed;
  j["labels"] = {-1, 0, 1};
  j["fold_confusions"] = ojson::array();
  for (const auto& c : fold_confusions) j["fold_confusions"].push_back(confusion_to_json(c));
  j["pooled_confusion"] = confusion_to_json(pooled);
  ojson agg;
  agg["accuracy"] = accuracy();
  agg["extrovert_accuracy"] = extrovert_accuracy();
  agg["introvert_accuracy"] = introvert_accuracy();
  agg["neutral_accuracy"] = pooled.recall(Label::neutral);
  agg["macro_f1"] = pooled.total() > 0 ? macro_f1() : 0.0;
  agg["fold_mean_accuracy"] = fold_mean_accuracy();
  agg["fold_mean_macro_f1"] = fold_mean_macro_f1();
  j["aggregate"] = agg;
  return j.dump(1) + "\n";
}

CVReport cross_validate(ModelKind kind, std::span<const LabeledSample> samples, int k,
                        std::uint64_t seed, const Hyperparameters& hp) {
  if (k < 2) throw DomainError("cross_validate: need at least 2 folds");
  validate_samples(samples);

  std::vector<std::size_t> canonical(samples.size());
  for (std::size_t i = 0; i < canonical.size(); ++i) canonical[i] = i;
  std::stable_sort(canonical.begin(), canonical.end(), [&](std::size_t a, std::size_t b) {
    return samples[a].user_id < samples[b].user_id;
  });

  Rng rng(seed);
  std::vector<int> fold_of(samples.size(), 0);
  std::size_t offset = 0;
  for (Label l : kAllLabels) {
    std::vector<std::size_t> members;
    for (auto i : canonical) {
      if (samples[i].label == l) members.push_back(i);
    }
    if (members.size() < static_cast<std::size_t>(k)) {
      throw DomainError("cross_validate: class " + std::string(label_name(l)) + " has " +
                        std::to_string(members.size()) + " samples, fewer than " +
                        std::to_string(k) + " folds");
    }
    rng.shuffle(members);
    for (std::size_t p = 0; p < members.size(); ++p) {
      fold_of[members[p]] = static_cast<int>((p + offset) % static_cast<std::size_t>(k));
    }
    offset += members.size();
  }

  CVReport report{kind, k, seed, {}, {}};
  for (int f = 0; f < k; ++f) {
    std::vector<LabeledSample> train_set;
    std::vector<const LabeledSample*> test_set;
    for (auto i : canonical) {
      if (fold_of[i] == f) test_set.push_back(&samples[i]);
      else train_set.push_back(samples[i]);
    }
    const auto model = train(kind, train_set, hp, Rng::derive(seed, static_cast<std::uint64_t>(f)));
    ConfusionMatrix cm;
    for (const auto* s : test_set) cm.add(s->label, model.predict_scaled(s->features));
    report.pooled += cm;
    report.fold_confusions.push_back(cm);
  }
  return report;
}

}  // namespace extrav
