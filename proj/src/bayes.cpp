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


// Gaussian naive Bayes: class priors from frequencies, one normal likelihood
// per (class, feature).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "extrav/models.hpp"

namespace extrav::detail {

BayesState train_bayes(std::span<const LabeledSample> samples, const Hyperparameters& hp) {
  const std::size_t d = samples.front().features.size();
  BayesState s;
  std::array<double, 3> n{};
  for (std::size_t c = 0; c < 3; ++c) {
    s.mean[c].assign(d, 0.0);
    s.variance[c].assign(d, 0.0);
  }
  for (const auto& x : samples) {
    const auto c = static_cast<std::size_t>(label_index(x.label));
    n[c] += 1.0;
    for (std::size_t j = 0; j < d; ++j) s.mean[c][j] += x.features[j];
  }
  for (std::size_t c = 0; c < 3; ++c) {
    for (auto& m : s.mean[c]) m /= n[c];
  }
  for (const auto& x : samples) {
    const auto c = static_cast<std::size_t>(label_index(x.label));
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = x.features[j] - s.mean[c][j];
      s.variance[c][j] += dv * dv;
    }
  }

  // Smoothing relative to the largest overall feature variance.
  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (const auto& x : samples) mean += x.features[j];
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (const auto& x : samples) var += (x.features[j] - mean) * (x.features[j] - mean);
    max_var = std::max(max_var, var / static_cast<double>(samples.size()));
  }
  const double epsilon = std::max(hp.bayes_var_smoothing * max_var, 1e-12);

  const double total = static_cast<double>(samples.size());
  for (std::size_t c = 0; c < 3; ++c) {
    for (auto& v : s.variance[c]) v = v / n[c] + epsilon;
    s.log_prior[c] = std::log(n[c] / total);
  }
  return s;
}

Label predict_bayes(const BayesState& s, std::span<const double> x) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_c = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    double ll = s.log_prior[c];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double v = s.variance[c][j];
      const double dv = x[j] - s.mean[c][j];
      ll += -0.5 * std::log(2.0 * std::numbers::pi * v) - dv * dv / (2.0 * v);
    }
    if (ll > best) {
      best = ll;
      best_c = c;
    }
  }
  return kAllLabels[best_c];
}

}  // namespace extrav::detail
