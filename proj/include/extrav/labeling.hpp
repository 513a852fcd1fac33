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

#include <span>
#include <string_view>

namespace extrav {

/// Extraversion class. The integer values are the ones used in every output file.
enum class Label : int { introvert = -1, neutral = 0, extrovert = 1 };

inline constexpr Label kAllLabels[] = {Label::introvert, Label::neutral, Label::extrovert};

constexpr int to_int(Label l) { return static_cast<int>(l); }
/// Index into {introvert, neutral, extrovert} arrays.
constexpr int label_index(Label l) { return static_cast<int>(l) + 1; }
Label label_from_int(int v);
std::string_view label_name(Label l);

/// Gaussian fit of self-report scores with the mu +/- sigma/2 cut points.
class ScoreModel {
 public:
  /// sigma must be positive.
  static ScoreModel from_moments(double mu, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double lower() const noexcept { return mu_ - sigma_ / 2.0; }
  double upper() const noexcept { return mu_ + sigma_ / 2.0; }

 private:
  ScoreModel(double mu, double sigma) : mu_(mu), sigma_(sigma) {}
  double mu_;
  double sigma_;
};

/// Mean and population (divide-by-n) standard deviation. Needs >= 2 scores,
/// not all equal.
ScoreModel fit_score_model(std::span<const double> scores);

/// Above upper -> extrovert, below lower -> introvert, closed interval between -> neutral.
Label label_score(double score, const ScoreModel& model);

}  // namespace extrav
